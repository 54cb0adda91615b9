#include "vmlab/render.hpp"

#include "vmlab/instruments.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace vmlab {

namespace {

double to_double(const Rational& r) { return static_cast<double>(r.num()) / static_cast<double>(r.den()); }

constexpr double kLinearWidth = 1200, kLinearHeight = 300;
constexpr double kCircularWidth = 800, kCircularHeight = 600;
constexpr double kMargin = 40;
constexpr double kThimbleWidth = 160;
constexpr double kCaliperPxPerMm = 16;

double caliper_width(const ScaleGeometry& geo) {
    return 2 * kMargin + to_double(geo.fixed_marks.back().position) * kCaliperPxPerMm;
}

std::string num(double v) {
    if (std::fabs(v) < 5e-7) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

class SvgWriter {
  public:
    SvgWriter(double width, double height, std::string_view title) {
        out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
                num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
                "\" font-family=\"sans-serif\" font-size=\"14\">\n";
        out_ += "<title>" + escape(title) + "</title>\n";
        out_ += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
                "\" fill=\"#fffef8\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, std::string_view stroke = "#000",
              double width = 1) {
        out_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
                num(y2) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + num(width) +
                "\"/>\n";
    }

    void text(double x, double y, std::string_view content, std::string_view anchor = "middle") {
        out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" +
                std::string(anchor) + "\">" + escape(content) + "</text>\n";
    }

    void rect(double x, double y, double w, double h, std::string_view stroke) {
        out_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
                num(h) + "\" fill=\"none\" stroke=\"" + std::string(stroke) + "\"/>\n";
    }

    void circle(double cx, double cy, double r, std::string_view stroke) {
        out_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
                "\" fill=\"none\" stroke=\"" + std::string(stroke) + "\"/>\n";
    }

    void open_group(const std::string& transform) {
        out_ += "<g transform=\"" + transform + "\">\n";
    }
    void close_group() { out_ += "</g>\n"; }

    std::string finish() && {
        out_ += "</svg>\n";
        return std::move(out_);
    }

  private:
    std::string out_;
};

double tick_length(const Mark& m, double major, double minor) {
    return m.tier == MarkTier::Major ? major : minor;
}

std::int64_t highlighted_mark(const InstrumentSpec& spec, TickPosition pos, bool show_reading) {
    return show_reading && spec.has_vernier() ? coincidence_index(spec, pos) : -1;
}

void draw_caliper(SvgWriter& svg, const ScaleGeometry& geo, TickPosition pos, bool show_reading) {
    const double extent = to_double(geo.fixed_marks.back().position);
    const double k = kCaliperPxPerMm;
    const double base = 150;

    svg.line(kMargin, base, kMargin + extent * k, base);
    for (const Mark& m : geo.fixed_marks) {
        const double x = kMargin + to_double(m.position) * k;
        svg.line(x, base, x, base - tick_length(m, 40, 20));
        if (m.label) svg.text(x, base - 50, *m.label);
    }

    const auto transform = moving_transform(geo.spec, pos);
    const std::int64_t hit = highlighted_mark(geo.spec, pos, show_reading);
    svg.open_group("translate(" + num(to_double(transform.amount) * k) + " 0)");
    for (std::size_t j = 0; j < geo.moving_marks.size(); ++j) {
        const Mark& m = geo.moving_marks[j];
        const double x = kMargin + to_double(m.position) * k;
        svg.line(x, base + 2, x, base + 2 + tick_length(m, 40, 20),
                 static_cast<std::int64_t>(j) == hit ? "#c00" : "#036");
        if (m.label) svg.text(x, base + 62, *m.label);
    }
    svg.close_group();
}

void draw_micrometer(SvgWriter& svg, const ScaleGeometry& geo, TickPosition pos) {
    const double extent = to_double(geo.fixed_marks.back().position);
    const double k = (kLinearWidth - 2 * kMargin - kThimbleWidth) / extent;
    const double base = 150;

    // Sleeve: whole millimetres above the datum line, half millimetres below.
    svg.line(kMargin, base, kMargin + extent * k, base);
    for (const Mark& m : geo.fixed_marks) {
        const double x = kMargin + to_double(m.position) * k;
        if (m.tier == MarkTier::Major)
            svg.line(x, base, x, base - 30);
        else
            svg.line(x, base, x, base + 20);
        if (m.label) svg.text(x, base - 40, *m.label);
    }

    // Thimble: the graduation on the datum line is pos mod divisions; show
    // the five graduations either side of it.
    const double edge = kMargin + to_double(moving_transform(geo.spec, pos).amount) * k;
    const double spacing = 11;
    const auto divisions = static_cast<std::int64_t>(geo.moving_marks.size());
    const std::int64_t on_datum = pos.ticks % divisions;
    svg.rect(edge, base - 60, kThimbleWidth, 120, "#036");
    for (std::int64_t offset = -5; offset <= 5; ++offset) {
        const std::int64_t j = ((on_datum + offset) % divisions + divisions) % divisions;
        const Mark& m = geo.moving_marks[static_cast<std::size_t>(j)];
        const double y = base - static_cast<double>(offset) * spacing;
        svg.line(edge, y, edge + tick_length(m, 25, 15), y, "#036");
        if (m.label) svg.text(edge + 32, y + 5, *m.label, "start");
    }
}

struct Polar {
    double cx, cy;
    bool clockwise_from_top;  // dial: 0 at twelve o'clock; protractor: 0 at nine o'clock

    std::pair<double, double> at(double r, double degrees) const {
        const double a = degrees * std::numbers::pi / 180.0;
        if (clockwise_from_top) return {cx + r * std::sin(a), cy - r * std::cos(a)};
        return {cx - r * std::cos(a), cy - r * std::sin(a)};
    }
};

void draw_dial(SvgWriter& svg, const ScaleGeometry& geo, TickPosition pos) {
    const Polar face{400, 280, true};
    const double r = 240;
    svg.circle(face.cx, face.cy, r, "#000");
    for (const Mark& m : geo.fixed_marks) {
        const double a = to_double(m.position);
        const auto [x1, y1] = face.at(r, a);
        const auto [x2, y2] = face.at(r - tick_length(m, 30, 15), a);
        svg.line(x1, y1, x2, y2);
        if (m.label) {
            const auto [tx, ty] = face.at(r - 55, a);
            svg.text(tx, ty + 5, *m.label);
        }
    }

    const Polar counter{400, 400, true};
    const double cr = 50;
    svg.circle(counter.cx, counter.cy, cr, "#036");
    const std::int64_t revolutions = geo.spec.range_max_ticks / *geo.spec.divisions_per_revolution;
    for (std::int64_t i = 0; i < revolutions; ++i) {
        const double a = 360.0 * static_cast<double>(i) / static_cast<double>(revolutions);
        const auto [x1, y1] = counter.at(cr, a);
        const auto [x2, y2] = counter.at(cr - 8, a);
        svg.line(x1, y1, x2, y2, "#036");
    }

    const double main_angle = to_double(moving_transform(geo.spec, pos).amount);
    svg.open_group("rotate(" + num(main_angle) + " " + num(face.cx) + " " + num(face.cy) + ")");
    svg.line(face.cx, face.cy, face.cx, face.cy - (r - 20), "#c00", 4);
    svg.close_group();

    const double counter_angle = to_double(revolution_counter_transform(geo.spec, pos).amount);
    svg.open_group("rotate(" + num(counter_angle) + " " + num(counter.cx) + " " + num(counter.cy) + ")");
    svg.line(counter.cx, counter.cy, counter.cx, counter.cy - (cr - 10), "#036", 3);
    svg.close_group();
}

void draw_protractor(SvgWriter& svg, const ScaleGeometry& geo, TickPosition pos, bool show_reading) {
    const Polar arc{400, 400, false};
    const double r = 300;
    for (const Mark& m : geo.fixed_marks) {
        const double a = to_double(m.position);
        const auto [x1, y1] = arc.at(r, a);
        const auto [x2, y2] = arc.at(r + tick_length(m, 24, 12), a);
        svg.line(x1, y1, x2, y2);
        if (m.label) {
            const auto [tx, ty] = arc.at(r + 40, a);
            svg.text(tx, ty + 5, *m.label);
        }
    }

    const double rotation = to_double(moving_transform(geo.spec, pos).amount);
    const std::int64_t hit = highlighted_mark(geo.spec, pos, show_reading);
    svg.open_group("rotate(" + num(rotation) + " " + num(arc.cx) + " " + num(arc.cy) + ")");
    for (std::size_t j = 0; j < geo.moving_marks.size(); ++j) {
        const Mark& m = geo.moving_marks[j];
        const double a = to_double(m.position);
        const auto [x1, y1] = arc.at(r - 2, a);
        const auto [x2, y2] = arc.at(r - 2 - tick_length(m, 24, 12), a);
        svg.line(x1, y1, x2, y2, static_cast<std::int64_t>(j) == hit ? "#c00" : "#036");
    }
    svg.close_group();
    // Labels stay upright, so they are placed outside the rotated group.
    for (const Mark& m : geo.moving_marks) {
        if (!m.label || m.tier != MarkTier::Major) continue;
        const auto [tx, ty] = arc.at(r - 40, to_double(m.position) + rotation);
        svg.text(tx, ty + 5, *m.label);
    }
}

}  // namespace

json geometry_document(const InstrumentSpec& spec, TickPosition pos, bool show_reading) {
    json doc = {
        {"instrument", slug(spec.kind)},
        {"ticks", pos.ticks},
        {"template", to_json(geometry_template(spec))},
        {"transform", transform_document(spec, pos)},
    };
    if (show_reading) doc["reading_text"] = reading_text(spec, pos);
    return doc;
}

std::string render_svg(const InstrumentSpec& spec, TickPosition pos, bool show_reading) {
    require_in_range(spec, pos);
    const ScaleGeometry geo = geometry_template(spec);
    const bool linear = geo.layout == ScaleLayout::Linear;
    const double width = spec.kind == InstrumentKind::VernierCaliper ? caliper_width(geo)
                         : linear                                  ? kLinearWidth
                                                                   : kCircularWidth;
    const double height = linear ? kLinearHeight : kCircularHeight;

    SvgWriter svg(width, height,
                  std::string(display_name(spec.kind)) + " at " + std::to_string(pos.ticks) + " ticks");
    switch (spec.kind) {
        case InstrumentKind::VernierCaliper: draw_caliper(svg, geo, pos, show_reading); break;
        case InstrumentKind::Micrometer: draw_micrometer(svg, geo, pos); break;
        case InstrumentKind::DialIndicator: draw_dial(svg, geo, pos); break;
        case InstrumentKind::VernierProtractor: draw_protractor(svg, geo, pos, show_reading); break;
    }
    if (show_reading) svg.text(kMargin, height - 20, reading_text(spec, pos), "start");
    return std::move(svg).finish();
}

}  // namespace vmlab
