#include "tvg/json_io.hpp"

#include "tvg/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace tvg {

namespace {

using Pointer = Json::json_pointer;

/// Schema violation at a JSON location; translated to ParseError by callers.
struct SchemaError {
    Pointer at;
    std::string message;
};

[[noreturn]] void fail(const Pointer& at, std::string message) { throw SchemaError{at, std::move(message)}; }

std::string where(const Pointer& at) { return at.empty() ? std::string("/") : at.to_string(); }

const Json& field(const Json& obj, const Pointer& at, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(at, std::string("missing field '") + key + "'");
    }
    return *it;
}

void check_fields(const Json& obj, const Pointer& at, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        fail(at, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            fail(at / key, "unknown field '" + key + "'");
        }
    }
}

Tick as_tick(const Json& j, const Pointer& at) {
    if (!j.is_number_unsigned()) {
        fail(at, "expected a non-negative integer");
    }
    return j.get<Tick>();
}

std::string as_string(const Json& j, const Pointer& at) {
    if (!j.is_string()) {
        fail(at, "expected a string");
    }
    return j.get<std::string>();
}

const Json& as_array(const Json& j, const Pointer& at) {
    if (!j.is_array()) {
        fail(at, "expected an array");
    }
    return j;
}

IntervalSet intervals_from(const Json& j, const Pointer& at) {
    std::vector<Interval> out;
    const auto& arr = as_array(j, at);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const Pointer here = at / i;
        if (!arr[i].is_array() || arr[i].size() != 2) {
            fail(here, "expected an interval [start, end]");
        }
        Tick s = as_tick(arr[i][0], here / 0);
        Tick e = as_tick(arr[i][1], here / 1);
        if (s >= e) {
            fail(here, "interval [" + std::to_string(s) + "," + std::to_string(e) + ") is empty");
        }
        out.push_back({s, e});
    }
    return IntervalSet::from(std::move(out));
}

std::vector<std::string> names_from(const Json& j, const Pointer& at) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    const auto& arr = as_array(j, at);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        auto name = as_string(arr[i], at / i);
        if (name.empty()) {
            fail(at / i, "vertex names must be non-empty");
        }
        if (!seen.insert(name).second) {
            fail(at / i, "duplicate vertex '" + name + "'");
        }
        out.push_back(std::move(name));
    }
    return out;
}

std::vector<VertexPair> pairs_from(const Json& j, const Pointer& at, const std::vector<std::string>& names) {
    auto index = [&](const Json& v, const Pointer& p) {
        auto name = as_string(v, p);
        for (std::uint32_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) {
                return Vertex{i};
            }
        }
        fail(p, "unknown vertex '" + name + "'");
    };
    std::vector<VertexPair> out;
    const auto& arr = as_array(j, at);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_array() || arr[i].size() != 2) {
            fail(at / i, "expected an edge [u, v]");
        }
        Vertex a = index(arr[i][0], at / i / 0);
        Vertex b = index(arr[i][1], at / i / 1);
        if (a == b) {
            fail(at / i, "self loop");
        }
        out.push_back(VertexPair::of(a, b));
    }
    return out;
}

Tvg tvg_at(const Json& j, const Pointer& at) {
    check_fields(j, at, {"vertices", "process_latency", "edges"});
    auto vertices = names_from(field(j, at, "vertices"), at / "vertices");
    Tick process_latency = 0;
    if (j.contains("process_latency")) {
        process_latency = as_tick(j["process_latency"], at / "process_latency");
        if (process_latency != 0) {
            fail(at / "process_latency", "process latency is fixed to 0");
        }
    }
    const std::set<std::string> known(vertices.begin(), vertices.end());
    std::set<std::pair<std::string, std::string>> pairs;
    std::vector<EdgeSpec> edges;
    const Pointer edges_at = at / "edges";
    const auto& arr = as_array(field(j, at, "edges"), edges_at);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const Pointer here = edges_at / i;
        const Json& ej = arr[i];
        check_fields(ej, here, {"u", "v", "latency", "transient", "base", "period", "pattern"});
        EdgeSpec spec;
        spec.u = as_string(field(ej, here, "u"), here / "u");
        spec.v = as_string(field(ej, here, "v"), here / "v");
        for (const auto* end : {&spec.u, &spec.v}) {
            if (!known.contains(*end)) {
                fail(here / (end == &spec.u ? "u" : "v"), "unknown vertex '" + *end + "'");
            }
        }
        if (spec.u == spec.v) {
            fail(here, "self loop on vertex '" + spec.u + "'");
        }
        if (!pairs.insert(std::minmax(spec.u, spec.v)).second) {
            fail(here, "second edge between '" + spec.u + "' and '" + spec.v + "'");
        }
        spec.latency = as_tick(field(ej, here, "latency"), here / "latency");
        if (spec.latency == 0) {
            fail(here / "latency", "latency must be at least 1");
        }
        IntervalSet transient = ej.contains("transient") ? intervals_from(ej["transient"], here / "transient") : IntervalSet{};
        Tick base = ej.contains("base") ? as_tick(ej["base"], here / "base") : 0;
        Tick period = as_tick(field(ej, here, "period"), here / "period");
        IntervalSet pattern = ej.contains("pattern") ? intervals_from(ej["pattern"], here / "pattern") : IntervalSet{};
        if (period == 0) {
            fail(here / "period", "period must be positive");
        }
        if (!transient.empty() && transient.back().end > base) {
            fail(here / "transient", "transient extends past base " + std::to_string(base));
        }
        if (!pattern.empty() && pattern.back().end > period) {
            fail(here / "pattern", "pattern extends past period " + std::to_string(period));
        }
        spec.schedule = PresenceSchedule(std::move(transient), base, period, std::move(pattern));
        if (spec.schedule.never_present()) {
            fail(here, "edge " + spec.u + "-" + spec.v + " is never present");
        }
        edges.push_back(std::move(spec));
    }
    return Tvg(std::move(vertices), std::move(edges), process_latency);
}

OutputTrace trace_at(const Json& j, const Pointer& at) {
    check_fields(j, at, {"horizon", "vertices", "outputs"});
    Tick horizon = as_tick(field(j, at, "horizon"), at / "horizon");
    auto vertices = names_from(field(j, at, "vertices"), at / "vertices");
    std::sort(vertices.begin(), vertices.end());
    OutputTrace tr(vertices, horizon);
    const Pointer outs_at = at / "outputs";
    const Json& outs = field(j, at, "outputs");
    if (!outs.is_object()) {
        fail(outs_at, "expected an object keyed by vertex");
    }
    for (const auto& [name, changes] : outs.items()) {
        auto it = std::find(vertices.begin(), vertices.end(), name);
        if (it == vertices.end()) {
            fail(outs_at / name, "unknown vertex '" + name + "'");
        }
        const Vertex p{static_cast<std::uint32_t>(it - vertices.begin())};
        const Pointer list_at = outs_at / name;
        const auto& arr = as_array(changes, list_at);
        std::optional<Tick> prev;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const Pointer here = list_at / i;
            check_fields(arr[i], here, {"tick", "edges"});
            Tick t = as_tick(field(arr[i], here, "tick"), here / "tick");
            if (t > horizon) {
                fail(here / "tick", "change after the horizon");
            }
            if (prev && t <= *prev) {
                fail(here / "tick", "change ticks must increase strictly");
            }
            prev = t;
            tr.record(p, t, StaticGraph(vertices, pairs_from(field(arr[i], here, "edges"), here / "edges", vertices)));
        }
    }
    return tr;
}

/// Byte offset of the value at `path` in well-formed JSON text.
class Locator {
public:
    explicit Locator(std::string_view text) : s_(text) {}

    std::size_t find(const Pointer& ptr) {
        std::vector<std::string> tokens;
        for (Pointer p = ptr; !p.empty(); p = p.parent_pointer()) {
            tokens.insert(tokens.begin(), p.back());
        }
        i_ = 0;
        return descend(tokens, 0);
    }

private:
    static constexpr std::size_t npos = std::string_view::npos;

    void ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) {
            ++i_;
        }
    }

    std::string read_string() {
        std::string out;
        ++i_;
        while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\\') {
                ++i_;
            }
            if (i_ < s_.size()) {
                out.push_back(s_[i_++]);
            }
        }
        ++i_;
        return out;
    }

    void skip_value() {
        ws();
        if (i_ >= s_.size()) {
            return;
        }
        if (s_[i_] == '"') {
            read_string();
            return;
        }
        if (s_[i_] == '{' || s_[i_] == '[') {
            int depth = 0;
            while (i_ < s_.size()) {
                char c = s_[i_];
                if (c == '"') {
                    read_string();
                    continue;
                }
                ++i_;
                if (c == '{' || c == '[') {
                    ++depth;
                } else if ((c == '}' || c == ']') && --depth == 0) {
                    return;
                }
            }
            return;
        }
        while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']') {
            ++i_;
        }
    }

    std::size_t descend(const std::vector<std::string>& path, std::size_t depth) {
        ws();
        if (depth == path.size() || i_ >= s_.size()) {
            return i_;
        }
        const std::size_t here = i_;
        if (s_[i_] == '{') {
            ++i_;
            while (true) {
                ws();
                if (i_ >= s_.size() || s_[i_] != '"') {
                    return here;
                }
                const std::size_t key_at = i_;
                std::string key = read_string();
                ws();
                ++i_;  // ':'
                if (key == path[depth]) {
                    // A missing child (unknown-field reports point at the key itself).
                    return depth + 1 == path.size() ? key_at : descend(path, depth + 1);
                }
                skip_value();
                ws();
                if (i_ >= s_.size() || s_[i_] != ',') {
                    return here;
                }
                ++i_;
            }
        }
        if (s_[i_] == '[') {
            std::size_t want = 0;
            try {
                want = std::stoul(path[depth]);
            } catch (const std::exception&) {
                return here;
            }
            ++i_;
            for (std::size_t n = 0;; ++n) {
                ws();
                if (i_ >= s_.size() || s_[i_] == ']') {
                    return here;
                }
                if (n == want) {
                    return descend(path, depth + 1);
                }
                skip_value();
                ws();
                if (i_ >= s_.size() || s_[i_] != ',') {
                    return here;
                }
                ++i_;
            }
        }
        return here;
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

std::string position(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k < offset; ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

Json parse_text(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        std::string msg = e.what();
        if (auto cut = msg.find("column "); cut != std::string::npos) {
            if (auto colon = msg.find(": ", cut); colon != std::string::npos) {
                msg = msg.substr(colon + 2);
            }
        }
        std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
        throw ParseError(std::string(source) + ":" + position(text, offset) + ": " + msg);
    }
}

template <typename F>
auto located(std::string_view text, std::string_view source, F&& build) {
    Json j = parse_text(text, source);
    try {
        return build(j);
    } catch (const SchemaError& e) {
        std::size_t offset = Locator(text).find(e.at);
        throw ParseError(std::string(source) + ":" + position(text, offset) + ": at " + where(e.at) + ": " +
                         e.message);
    } catch (const DomainError& e) {
        throw ParseError(std::string(source) + ":1:1: " + e.what());
    }
}

std::string hex(const Payload& p) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(p.size() * 2);
    for (auto b : p) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

const char* kind_name(EventKind k) {
    switch (k) {
        case EventKind::init: return "init";
        case EventKind::edge_up: return "edge_up";
        case EventKind::edge_down: return "edge_down";
        case EventKind::deliver: return "deliver";
        case EventKind::timer: return "timer";
    }
    return "?";
}

Json edge_pair(const StaticGraph& g, VertexPair e) { return Json::array({g.name(e.u), g.name(e.v)}); }

Json detection_json(const Detection& d) {
    Json j;
    j["tick"] = d.tick ? Json(*d.tick) : Json(nullptr);
    if (d.last_output) {
        j["last_output"] = *d.last_output;
    }
    if (d.vacuous) {
        j["vacuous"] = true;
    }
    if (!d.evidence.empty()) {
        j["evidence"] = d.evidence;
    }
    return j;
}

}  // namespace

Json to_json(ExtendedTime t) { return t.is_finite() ? Json(t.value()) : Json("inf"); }

Json to_json(const IntervalSet& s) {
    Json out = Json::array();
    for (const auto& iv : s.intervals()) {
        out.push_back(Json::array({iv.start, iv.end}));
    }
    return out;
}

Json to_json(const StaticGraph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        edges.push_back(edge_pair(g, e));
    }
    return {{"vertices", Json(std::vector<std::string>(g.vertices().begin(), g.vertices().end()))}, {"edges", edges}};
}

Json to_json(const Tvg& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        edges.push_back({{"u", g.name(e.ends.u)},
                         {"v", g.name(e.ends.v)},
                         {"latency", e.latency},
                         {"transient", to_json(e.schedule.transient())},
                         {"base", e.schedule.base()},
                         {"period", e.schedule.period()},
                         {"pattern", to_json(e.schedule.pattern())}});
    }
    return {{"vertices", Json(std::vector<std::string>(g.vertices().begin(), g.vertices().end()))},
            {"process_latency", g.process_latency()},
            {"edges", edges}};
}

Json to_json(const OutputTrace& tr) {
    Json outputs = Json::object();
    for (std::uint32_t p = 0; p < tr.process_count(); ++p) {
        Json changes = Json::array();
        for (const auto& c : tr.changes(Vertex{p})) {
            Json edges = Json::array();
            for (const auto& e : c.value.edges()) {
                edges.push_back(edge_pair(c.value, e));
            }
            changes.push_back({{"tick", c.tick}, {"edges", edges}});
        }
        outputs[tr.vertices()[p]] = changes;
    }
    return {{"horizon", tr.horizon()},
            {"vertices", Json(std::vector<std::string>(tr.vertices().begin(), tr.vertices().end()))},
            {"outputs", outputs}};
}

Json to_json(const TickRecord& rec, const Tvg& g) {
    Json j;
    j["tick"] = rec.tick;
    auto labels = [&](const std::vector<EdgeId>& ids) {
        Json out = Json::array();
        for (EdgeId e : ids) {
            out.push_back(g.edge_label(e));
        }
        return out;
    };
    auto messages = [&](const std::vector<MessageRecord>& ms) {
        Json out = Json::array();
        for (const auto& m : ms) {
            out.push_back({{"id", m.id},
                           {"edge", g.edge_label(m.edge)},
                           {"from", g.name(m.from)},
                           {"to", g.name(m.to)},
                           {"departure", m.departure},
                           {"due", m.due}});
        }
        return out;
    };
    if (!rec.appeared.empty()) {
        j["appeared"] = labels(rec.appeared);
    }
    if (!rec.disappeared.empty()) {
        j["disappeared"] = labels(rec.disappeared);
    }
    for (const auto& [key, list] : {std::pair{"lost", &rec.lost}, std::pair{"queued", &rec.queued},
                                    std::pair{"transmitted", &rec.transmitted}}) {
        if (!list->empty()) {
            j[key] = messages(*list);
        }
    }
    if (!rec.dispatched.empty()) {
        Json events = Json::array();
        for (const auto& d : rec.dispatched) {
            Json ev{{"process", g.name(d.process)}, {"event", kind_name(d.kind)}};
            if (d.peer) {
                ev["peer"] = g.name(*d.peer);
            }
            if (d.kind == EventKind::timer) {
                ev["tag"] = d.tag;
            }
            if (d.kind == EventKind::deliver) {
                ev["message"] = d.message;
                ev["payload"] = hex(d.payload);
            }
            events.push_back(std::move(ev));
        }
        j["dispatched"] = events;
    }
    if (!rec.output_changed.empty()) {
        Json procs = Json::array();
        for (Vertex v : rec.output_changed) {
            procs.push_back(g.name(v));
        }
        j["output_changed"] = procs;
    }
    return j;
}

Json to_json(const TemporalPath& path, const Tvg& g) {
    Json hops = Json::array();
    for (const auto& h : path.hops) {
        hops.push_back({{"edge", g.edge_label(h.edge)},
                        {"from", g.name(h.from)},
                        {"to", g.name(h.to)},
                        {"departure", h.departure},
                        {"arrival", h.arrival}});
    }
    return hops;
}

Json to_json(const SequenceReport& report) {
    Json consecutive = Json::array();
    for (const auto& l : report.consecutive) {
        consecutive.push_back(to_json(l));
    }
    Json matrix = Json::array();
    for (const auto& row : report.matrix) {
        Json r = Json::array();
        for (const auto& l : row) {
            r.push_back(to_json(l));
        }
        matrix.push_back(r);
    }
    Json scales = Json::array();
    for (const auto& v : report.scales) {
        scales.push_back({{"epsilon", "2^-" + std::to_string(v.exponent)},
                          {"cauchy", v.cauchy},
                          {"witness", v.witness ? Json(*v.witness) : Json(nullptr)}});
    }
    Json j{{"consecutive", consecutive},
           {"matrix", matrix},
           {"ultrametric_consistent", report.ultrametric_consistent},
           {"scales", scales}};
    j["limit"] = report.limit ? to_json(*report.limit) : Json(nullptr);
    return j;
}

Json to_json(const AdversaryReport& report) {
    Json rounds = Json::array();
    for (const auto& r : report.rounds) {
        Json j{{"index", r.index}, {"eta", detection_json(r.eta)}};
        if (r.g_prime) {
            j["alpha"] = detection_json(r.alpha);
        }
        if (r.lambda_consecutive) {
            j["lambda_consecutive"] = to_json(*r.lambda_consecutive);
        }
        if (r.limit_agreement) {
            j["limit_agreement"] = {{"lambda", r.limit_agreement->value}, {"censored", r.limit_agreement->censored}};
        }
        rounds.push_back(std::move(j));
    }
    return {{"edge", report.edge_label},
            {"algorithm", report.algorithm},
            {"config",
             {{"rounds", report.config.rounds},
              {"quiescence", report.config.quiescence},
              {"horizon", report.config.horizon}}},
            {"rounds", rounds},
            {"completed_rounds", report.completed_rounds()},
            {"flip_count", report.flip_count},
            {"verdict",
             {{"result", report.verdict.defeated ? "Defeated" : "Inconclusive"}, {"reason", report.verdict.reason}}},
            {"limit_prefix", to_json(report.limit_prefix)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string dump_line(const Json& j) { return j.dump() + "\n"; }

Tvg tvg_from_json(const Json& j) {
    try {
        return tvg_at(j, Pointer{});
    } catch (const SchemaError& e) {
        throw ParseError("at " + where(e.at) + ": " + e.message);
    }
}

OutputTrace output_trace_from_json(const Json& j) {
    try {
        return trace_at(j, Pointer{});
    } catch (const SchemaError& e) {
        throw ParseError("at " + where(e.at) + ": " + e.message);
    }
}

Tvg parse_tvg(std::string_view text, std::string_view source) {
    return located(text, source, [](const Json& j) { return tvg_at(j, Pointer{}); });
}

OutputTrace parse_output_trace(std::string_view text, std::string_view source) {
    return located(text, source, [](const Json& j) { return trace_at(j, Pointer{}); });
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path.string() + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Tvg load_tvg(const std::filesystem::path& path) { return parse_tvg(read_file(path), path.string()); }

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ParseError(path.string() + ": cannot write file");
    }
    out << contents;
    if (!out) {
        throw ParseError(path.string() + ": write failed");
    }
}

}  // namespace tvg
