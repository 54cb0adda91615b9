#include "vmlab/pages.hpp"

namespace vmlab {

namespace {

constexpr std::string_view kTitle = "Virtual Metrology Lab";

std::string page_href(SiteFlavor flavor, std::string_view served, std::string_view offline) {
    return std::string(flavor == SiteFlavor::Served ? served : offline);
}

std::string asset_href(SiteFlavor flavor, std::string_view file) {
    return (flavor == SiteFlavor::Served ? "/assets/" : "assets/") + std::string(file);
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string layout(SiteFlavor flavor, std::string_view heading, const std::string& body,
                    const std::string& extra_head = {}) {
    std::string html = "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    html += "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n";
    html += "<title>" + escape(heading) + " - " + std::string(kTitle) + "</title>\n";
    html += "<link rel=\"stylesheet\" href=\"" + asset_href(flavor, "lab.css") + "\">\n";
    html += extra_head;
    html += "</head>\n<body>\n<header><h1>" + std::string(kTitle) + "</h1></header>\n";
    html += "<nav id=\"menu\"><h2>Main Menu</h2>\n<ul>\n";
    for (const MenuEntry& entry : site_menu(flavor))
        html += "<li><a href=\"" + entry.href + "\">" + escape(entry.label) + "</a></li>\n";
    html += "</ul>\n</nav>\n<main>\n<h2>" + escape(heading) + "</h2>\n";
    html += body;
    html += "</main>\n</body>\n</html>\n";
    return html;
}

struct SafetySection {
    std::string title;
    std::vector<std::string> rules;
};

const std::vector<SafetySection>& safety_sections() {
    static const std::vector<SafetySection> sections = {
        {"Laboratory safety",
         {"Read the procedure for an instrument before handling it.",
          "Keep benches clear of bags, food and drink.",
          "Report damaged instruments to the supervisor instead of using them."}},
        {"Emergency response",
         {"Know where the exits, fire extinguishers and first-aid kit are.",
          "Stop work and follow the supervisor's instructions when an alarm sounds.",
          "Report every accident or near miss, however small."}},
        {"Personal and general laboratory safety",
         {"Wear closed shoes and tie back long hair near machinery.",
          "Never work alone in the laboratory.",
          "Wash your hands when you leave the laboratory."}},
        {"Electrical safety",
         {"Check cables and plugs for damage before switching equipment on.",
          "Keep liquids away from electrical equipment.",
          "Switch off and unplug equipment before cleaning or adjusting it."}},
        {"Mechanical safety",
         {"Close caliper jaws and lock micrometers before storing them.",
          "Keep fingers clear of moving parts and sharp measuring faces.",
          "Measure parts only when machines are fully stopped."}},
        {"Chemical safety",
         {"Use only the cleaning agents and oils provided for instrument care.",
          "Label every container and never taste or sniff chemicals.",
          "Dispose of used wipes and solvents in the marked bins."}},
        {"Additional safety guidelines",
         {"Return instruments to their cases after use.",
          "Handle gauge blocks and reference standards with gloves.",
          "Ask when in doubt."}},
    };
    return sections;
}

}  // namespace

std::vector<MenuEntry> site_menu(SiteFlavor flavor) {
    std::vector<MenuEntry> menu = {
        {"Home", page_href(flavor, "/", "index.html")},
        {"Safety rules", page_href(flavor, "/safety", "safety.html")},
    };
    for (auto kind : kAllKinds) {
        const std::string s(slug(kind));
        menu.push_back({std::string(display_name(kind)),
                        page_href(flavor, "/lab/" + s, "lab-" + s + ".html")});
    }
    return menu;
}

const std::vector<std::string>& safety_categories() {
    static const std::vector<std::string> titles = [] {
        std::vector<std::string> out;
        for (const auto& section : safety_sections()) out.push_back(section.title);
        return out;
    }();
    return titles;
}

std::string home_page(SiteFlavor flavor) {
    std::string body =
        "<p>Practise reading four dimensional-measurement instruments used for length and "
        "angle measurement. Each lab shows the instrument scales on screen.</p>\n"
        "<ul class=\"instruments\">\n";
    for (auto kind : kAllKinds) {
        const auto spec = default_spec(kind);
        const std::string s(slug(kind));
        body += "<li><a href=\"" + page_href(flavor, "/lab/" + s, "lab-" + s + ".html") + "\">" +
                std::string(display_name(kind)) + "</a> (least count " +
                display_least_count(spec).to_decimal() + " " +
                std::string(unit_symbol(spec.display_unit)) + ")</li>\n";
    }
    body += "</ul>\n<h3>How to use a lab</h3>\n<ol>\n"
            "<li>Tick <em>Show reading</em> and drag the moving scale left or right to see how "
            "the value is built from the scales.</li>\n"
            "<li>Press <em>Reset</em> to return the instrument to zero.</li>\n";
    if (flavor == SiteFlavor::Served)
        body += "<li>Press <em>New exercise</em> to be given a position, type your reading and "
                "press <em>Enter</em>.</li>\n";
    body += "</ol>\n<p>Please read the <a href=\"" + page_href(flavor, "/safety", "safety.html") +
            "\">safety rules</a> before working in the physical laboratory.</p>\n";
    if (flavor == SiteFlavor::Offline)
        body += "<p class=\"note\">This offline copy supports explore mode only.</p>\n";
    return layout(flavor, "Home", body);
}

std::string safety_page(SiteFlavor flavor) {
    std::string body;
    for (const auto& section : safety_sections()) {
        body += "<section>\n<h3>" + escape(section.title) + "</h3>\n<ul>\n";
        for (const auto& rule : section.rules) body += "<li>" + escape(rule) + "</li>\n";
        body += "</ul>\n</section>\n";
    }
    return layout(flavor, "Safety rules", body);
}

std::string lab_page(InstrumentKind kind, SiteFlavor flavor) {
    const std::string s(slug(kind));
    const bool served = flavor == SiteFlavor::Served;
    std::string head;
    if (!served) head += "<script src=\"templates/" + s + ".js\"></script>\n";
    head += "<script defer src=\"" + asset_href(flavor, "lab.js") + "\"></script>\n";

    std::string body = "<div id=\"lab\" data-kind=\"" + s + "\" data-online=\"" +
                       (served ? "1" : "0") + "\">\n";
    body += "<div class=\"controls\">\n"
            "<label><input type=\"checkbox\" id=\"show-reading\"> Show reading</label>\n"
            "<button type=\"button\" id=\"reset\">Reset</button>\n";
    if (served) body += "<button type=\"button\" id=\"new-exercise\">New exercise</button>\n";
    body += "</div>\n"
            "<div id=\"banner\" class=\"banner\" hidden></div>\n"
            "<div id=\"stage\" class=\"stage\"></div>\n"
            "<p class=\"reading\">" + std::string(display_name(kind)) +
            " reading: <input type=\"text\" id=\"answer\" autocomplete=\"off\" readonly> " +
            std::string(unit_symbol(default_spec(kind).display_unit)) + "</p>\n"
            "<p id=\"breakdown\" class=\"breakdown\"></p>\n"
            "<p id=\"feedback\" class=\"feedback\" aria-live=\"polite\"></p>\n";
    if (served) body += "<p id=\"stats\" class=\"stats\"></p>\n";
    body += "</div>\n";
    return layout(flavor, std::string(display_name(kind)), body, head);
}

std::string_view lab_stylesheet() {
    return R"CSS(body { font-family: sans-serif; margin: 0; display: grid; grid-template-columns: 14em 1fr; }
header { grid-column: 1 / 3; background: #234; color: #fff; padding: 0.5em 1em; }
nav { padding: 1em; background: #eef; }
nav ul { list-style: none; padding: 0; }
nav li { margin: 0.4em 0; }
main { padding: 1em 2em; }
.stage { overflow-x: auto; border: 1px solid #ccc; background: #fffef8; }
.stage svg { display: block; touch-action: none; cursor: ew-resize; }
.stage.locked svg { cursor: default; }
.controls button, .controls label { margin-right: 1em; }
.reading input { width: 8em; font-size: 1.1em; }
.breakdown { font-family: monospace; min-height: 1.2em; }
.feedback { font-weight: bold; min-height: 1.2em; }
.banner { background: #fdd; padding: 0.5em; }
.note { color: #555; }
)CSS";
}

std::string_view lab_script() {
    return R"JS((function () {
  "use strict";
  var root = document.getElementById("lab");
  if (!root) return;
  var kind = root.dataset.kind;
  var online = root.dataset.online === "1";
  var API = "/api/v1";
  var SVGNS = "http://www.w3.org/2000/svg";
  var $ = function (id) { return document.getElementById(id); };
  var stage = $("stage"), answer = $("answer"), breakdown = $("breakdown");
  var feedback = $("feedback"), showReading = $("show-reading"), banner = $("banner");

  var geo = null, spec = null, ticks = 0, quiz = null, moving = null, pointers = [];

  function val(r) { return r.num / r.den; }
  function decimalText(x) { return x.toFixed(6).replace(/0+$/, "").replace(/\.$/, ""); }
  function displayFactor() { return spec.display_unit === "μm" ? 1000 : 1; }

  // Integer-only mirror of the server's format_value.
  function formatValue(t) {
    var d = spec.display_decimals, lc = spec.least_count;
    var scaled = Math.round(t * lc.num * displayFactor() * Math.pow(10, d) / lc.den);
    var s = String(scaled);
    while (s.length < d + 1) s = "0" + s;
    return d ? s.slice(0, s.length - d) + "." + s.slice(s.length - d) : s;
  }

  function readingText(t) {
    var u = spec.display_unit, v = formatValue(t);
    var lc = decimalText(val(spec.least_count) * displayFactor());
    if (kind === "caliper" || kind === "protractor") {
      var n = spec.vernier_divisions;
      return "main " + Math.floor(t / n) + " " + u + " + vernier " + (t % n) + " × " + lc +
        " " + u + " = " + v + " " + u;
    }
    if (kind === "micrometer") {
      var m = spec.main_division_ticks;
      var div = decimalText(val(spec.least_count) * m);
      return "sleeve " + Math.floor(t / m) + " × " + div + " " + u + " + thimble " + (t % m) +
        " × " + lc + " " + u + " = " + v + " " + u;
    }
    var r = spec.divisions_per_revolution;
    return "revolutions " + Math.floor(t / r) + " + dial " + (t % r) + " × " + lc + " " + u +
      " = " + v + " " + u;
  }

  function el(name, attrs, parent) {
    var e = document.createElementNS(SVGNS, name);
    for (var k in attrs) e.setAttribute(k, attrs[k]);
    if (parent) parent.appendChild(e);
    return e;
  }

  // Linear scales: 4 px per least count keeps every tick draggable.
  var PX_PER_TICK = 4;
  function pxPerUnit() { return PX_PER_TICK / val(spec.least_count); }

  function drawLinear(svg) {
    var k = pxPerUnit(), x0 = 40, base = 110;
    var last = val(geo.fixed_marks[geo.fixed_marks.length - 1].position);
    svg.setAttribute("width", Math.ceil(x0 * 2 + last * k + (kind === "caliper" ? 0 : 200)));
    svg.setAttribute("height", 240);
    el("line", { x1: x0, y1: base, x2: x0 + last * k, y2: base, stroke: "#000" }, svg);
    geo.fixed_marks.forEach(function (m) {
      var x = x0 + val(m.position) * k, h = m.tier === "major" ? 30 : 15;
      el("line", { x1: x, y1: base, x2: x, y2: base - h, stroke: "#000" }, svg);
      if (m.label) el("text", { x: x, y: base - 36, "text-anchor": "middle" }, svg).textContent = m.label;
    });
    moving = el("g", {}, svg);
    if (kind === "caliper") {
      geo.moving_marks.forEach(function (m, j) {
        var x = x0 + val(m.position) * k, h = m.tier === "major" ? 30 : 15;
        el("line", { x1: x, y1: base + 2, x2: x, y2: base + 2 + h, stroke: "#036", "data-index": j }, moving);
        if (m.label) el("text", { x: x, y: base + 52, "text-anchor": "middle" }, moving).textContent = m.label;
      });
    } else {
      el("rect", { x: x0, y: base - 60, width: 180, height: 120, fill: "#dde", stroke: "#036" }, moving);
      el("text", { x: x0 + 90, y: base + 80, "text-anchor": "middle" }, moving).textContent = "thimble";
    }
  }

  function polar(cx, cy, r, deg) {
    var a = deg * Math.PI / 180;
    return kind === "dial" ? [cx + r * Math.sin(a), cy - r * Math.cos(a)]
                           : [cx - r * Math.cos(a), cy - r * Math.sin(a)];
  }

  function drawCircular(svg) {
    var cx = 400, cy = kind === "dial" ? 300 : 380, r = 260;
    svg.setAttribute("width", 800);
    svg.setAttribute("height", kind === "dial" ? 600 : 460);
    geo.fixed_marks.forEach(function (m) {
      var a = val(m.position), h = m.tier === "major" ? 24 : 12;
      var p = polar(cx, cy, r, a), q = polar(cx, cy, kind === "dial" ? r - h : r + h, a);
      el("line", { x1: p[0], y1: p[1], x2: q[0], y2: q[1], stroke: "#000" }, svg);
      if (m.label) {
        var t = polar(cx, cy, kind === "dial" ? r - 44 : r + 36, a);
        el("text", { x: t[0], y: t[1] + 5, "text-anchor": "middle" }, svg).textContent = m.label;
      }
    });
    if (kind === "dial") {
      pointers = [el("line", { x1: cx, y1: cy, x2: cx, y2: cy - r + 30, stroke: "#c00", "stroke-width": 4 }, svg),
                  el("line", { x1: cx, y1: cy + 120, x2: cx, y2: cy + 80, stroke: "#036", "stroke-width": 3 }, svg)];
      el("circle", { cx: cx, cy: cy + 120, r: 50, fill: "none", stroke: "#036" }, svg);
      return;
    }
    moving = el("g", {}, svg);
    geo.moving_marks.forEach(function (m, j) {
      var a = val(m.position), h = m.tier === "major" ? 24 : 12;
      var p = polar(cx, cy, r - 2, a), q = polar(cx, cy, r - 2 - h, a);
      el("line", { x1: p[0], y1: p[1], x2: q[0], y2: q[1], stroke: "#036", "data-index": j }, moving);
      if (m.label) {
        var t = polar(cx, cy, r - 40, a);
        el("text", { x: t[0], y: t[1] + 5, "text-anchor": "middle" }, moving).textContent = m.label;
      }
    });
    moving.dataset.cx = cx;
    moving.dataset.cy = cy;
  }

  function place() {
    var lc = val(spec.least_count);
    if (kind === "caliper" || kind === "micrometer") {
      moving.setAttribute("transform", "translate(" + (ticks * lc * pxPerUnit()) + " 0)");
    } else if (kind === "protractor") {
      moving.setAttribute("transform", "rotate(" + (ticks * lc) + " " + moving.dataset.cx + " " + moving.dataset.cy + ")");
    } else {
      var per = spec.divisions_per_revolution, revs = spec.range_max_ticks / per;
      pointers[0].setAttribute("transform", "rotate(" + (ticks % per) * 360 / per + " 400 300)");
      pointers[1].setAttribute("transform", "rotate(" + (Math.floor(ticks / per) % revs) * 360 / revs + " 400 420)");
    }
    var marks = stage.querySelectorAll("[data-index]");
    var hit = spec.vernier_divisions ? ticks % spec.vernier_divisions : -1;
    for (var i = 0; i < marks.length; i++) {
      var on = showReading.checked && Number(marks[i].dataset.index) === hit;
      marks[i].setAttribute("stroke", on ? "#c00" : "#036");
    }
    refreshReading();
  }

  function refreshReading() {
    if (showReading.checked) {
      breakdown.textContent = readingText(ticks);
      if (!quiz) answer.value = formatValue(ticks);
    } else {
      breakdown.textContent = "";
      if (!quiz) answer.value = "";
    }
  }

  function setTicks(t) {
    ticks = Math.max(0, Math.min(spec.range_max_ticks, Math.round(t)));
    place();
  }

  function enableDrag(svg) {
    var start = null;
    svg.addEventListener("pointerdown", function (e) {
      if (quiz) return;
      start = { x: e.clientX, y: e.clientY, ticks: ticks };
      svg.setPointerCapture(e.pointerId);
    });
    svg.addEventListener("pointermove", function (e) {
      if (!start) return;
      // Circular instruments also follow horizontal drag, one tick per 4 px.
      setTicks(start.ticks + (e.clientX - start.x) / PX_PER_TICK);
    });
    svg.addEventListener("pointerup", function () { start = null; });
  }

  function showBanner(text) { banner.textContent = text; banner.hidden = !text; }

  function request(method, path, body) {
    return fetch(API + path, {
      method: method,
      headers: body ? { "Content-Type": "application/json" } : {},
      body: body ? JSON.stringify(body) : undefined
    }).then(function (res) {
      return res.json().then(function (doc) { return { status: res.status, doc: doc }; });
    });
  }

  function sessionId() {
    var sid = sessionStorage.getItem("vmlab-session");
    if (sid) return Promise.resolve(sid);
    return request("POST", "/sessions").then(function (r) {
      sessionStorage.setItem("vmlab-session", r.doc.session_id);
      return r.doc.session_id;
    });
  }

  function refreshStats(sid) {
    request("GET", "/sessions/" + sid + "/stats").then(function (r) {
      var t = r.doc.per_kind[kind], o = r.doc.overall;
      $("stats").textContent = "This instrument: " + t.correct + "/" + t.attempts +
        " correct. All instruments: " + o.correct + "/" + o.attempts + ".";
    });
  }

  function ticksFromTransform(doc) {
    var a = val(doc.transform.amount), lc = val(spec.least_count);
    if (kind !== "dial") return Math.round(a / lc);
    var per = spec.divisions_per_revolution, revs = spec.range_max_ticks / per;
    var turns = Math.round(val(doc.revolution_counter.amount) / (360 / revs));
    return turns * per + Math.round(a / (360 / per));
  }

  function newExercise() {
    feedback.textContent = "";
    sessionId().then(function (sid) {
      return request("POST", "/sessions/" + sid + "/exercises", { kind: kind }).then(function (r) {
        var eid = r.doc.exercise_id;
        return request("GET", "/sessions/" + sid + "/exercises/" + eid + "/transform").then(function (t) {
          quiz = { sid: sid, eid: eid, revealed: false, done: false };
          stage.classList.add("locked");
          showReading.checked = false;
          answer.readOnly = false;
          answer.value = "";
          answer.focus();
          setTicks(ticksFromTransform(t.doc));
          refreshStats(sid);
        });
      });
    }).catch(function () { showBanner("The lab server could not be reached. Try again."); });
  }

  function submit() {
    if (!quiz || quiz.done) return;
    if (quiz.revealed) {
      feedback.textContent = "The reading was shown. Start a new exercise to continue.";
      return;
    }
    var text = answer.value;
    request("POST", "/sessions/" + quiz.sid + "/exercises/" + quiz.eid + "/answer", { text: text })
      .then(function (r) {
        if (r.status === 200) {
          feedback.textContent = r.doc.message;
          quiz.done = true;
          refreshStats(quiz.sid);
        } else if (r.doc.code === "malformed_input") {
          feedback.textContent = "Type the value with digits and a decimal point, for example 12.3.";
        } else {
          feedback.textContent = r.doc.message;
        }
      })
      .catch(function () { showBanner("Your answer could not be sent. Press Enter to retry."); });
  }

  function reset() {
    if (quiz) {
      answer.value = "";
      return;
    }
    showReading.checked = false;
    feedback.textContent = "";
    setTicks(0);
  }

  function start(template) {
    geo = template;
    spec = template.spec;
    var svg = el("svg", { xmlns: SVGNS, "font-size": 14 });
    stage.appendChild(svg);
    if (geo.layout === "linear") drawLinear(svg); else drawCircular(svg);
    enableDrag(svg);
    setTicks(0);
  }

  showReading.addEventListener("change", function () {
    if (quiz && showReading.checked) quiz.revealed = true;
    place();
  });
  $("reset").addEventListener("click", reset);
  answer.addEventListener("keydown", function (e) { if (e.key === "Enter") submit(); });
  if (online && $("new-exercise")) $("new-exercise").addEventListener("click", newExercise);

  var bundled = window.VMLAB_TEMPLATES && window.VMLAB_TEMPLATES[kind];
  if (bundled) {
    start(bundled);
  } else {
    fetch(API + "/instruments/" + kind + "/template")
      .then(function (res) { return res.json(); })
      .then(start)
      .catch(function () { showBanner("Instrument data could not be loaded. Reload to retry."); });
  }
})();
)JS";
}

}  // namespace vmlab
