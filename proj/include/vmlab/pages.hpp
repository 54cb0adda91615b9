#pragma once

#include "vmlab/core_model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace vmlab {

/// Served pages use absolute routes (/safety, /lab/dial); the offline bundle
/// uses relative file names (safety.html, lab-dial.html) and has no quiz mode.
enum class SiteFlavor { Served, Offline };

struct MenuEntry {
    std::string label;
    std::string href;
};

/// Home, Safety rules, then the four instruments in catalog order.
std::vector<MenuEntry> site_menu(SiteFlavor flavor);

std::string home_page(SiteFlavor flavor);
std::string safety_page(SiteFlavor flavor);
std::string lab_page(InstrumentKind kind, SiteFlavor flavor);

/// Section headings of the safety-rules page.
const std::vector<std::string>& safety_categories();

std::string_view lab_script();
std::string_view lab_stylesheet();

}  // namespace vmlab
