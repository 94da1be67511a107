#include "varifold/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace varifold::io {

using nlohmann::json;

std::string format_double(double x) {
    if (x == 0)
        x = 0; // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_double_exact(double x) {
    if (x == 0)
        x = 0;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// JsonWriter

void JsonWriter::comma() {
    if (!first_.empty()) {
        if (!first_.back())
            out_ += ',';
        first_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    comma();
    out_ += '[';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    comma();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    if (!first_.empty())
        first_.back() = true; // next value attaches without a comma
    return *this;
}

JsonWriter& JsonWriter::value(double x) {
    comma();
    out_ += format_double(x);
    return *this;
}

JsonWriter& JsonWriter::value_exact(double x) {
    comma();
    out_ += format_double_exact(x);
    return *this;
}

JsonWriter& JsonWriter::value(std::int64_t x) {
    comma();
    out_ += std::to_string(x);
    return *this;
}

JsonWriter& JsonWriter::value(bool b) {
    comma();
    out_ += b ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    comma();
    out_ += '"';
    for (char c : s) {
        if (c == '"' || c == '\\')
            out_ += '\\';
        out_ += c;
    }
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::point(const Vec& p, bool exact) {
    begin_array();
    for (double x : p)
        exact ? value_exact(x) : value(x);
    return end_array();
}

JsonWriter& JsonWriter::null() {
    comma();
    out_ += "null";
    return *this;
}

// ---------------------------------------------------------------------------
// NetworkFile

const Region& NetworkFile::region(const std::string& id) const {
    for (const auto& r : regions)
        if (r.id == id)
            return r.region;
    throw Error(Error::Code::invalid_input, "unknown region id: " + id);
}

std::size_t NetworkFile::edge_index(const std::string& id) const {
    for (std::size_t e = 0; e < edge_ids.size(); ++e)
        if (edge_ids[e] == id)
            return e;
    throw Error(Error::Code::invalid_input, "unknown edge id: " + id);
}

namespace {

Vec parse_coords(const json& j, std::size_t dim, const char* what) {
    if (!j.is_array() || (dim != 0 && j.size() != dim))
        throw Error(Error::Code::invalid_input,
                    std::string(what) + ": expected an array of " + std::to_string(dim) +
                        " coordinates");
    Vec out;
    for (const auto& x : j) {
        if (!x.is_number())
            throw Error(Error::Code::invalid_input, std::string(what) + ": non-numeric coordinate");
        out.push_back(x.get<double>());
    }
    if (out.size() < 2)
        throw Error(Error::Code::invalid_input, std::string(what) + ": need n >= 2");
    return out;
}

AppropriateClass parse_class(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw Error(Error::Code::invalid_input, "class: expected an object with a kind");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "integers")
        return AppropriateClass::integers();
    if (kind != "grid")
        throw Error(Error::Code::invalid_input, "class kind must be \"integers\" or \"grid\"");
    auto denom = j.at("denom").get<std::int64_t>();
    std::vector<std::pair<double, double>> pieces;
    for (const auto& p : j.at("pieces")) {
        if (!p.is_array() || p.size() != 2)
            throw Error(Error::Code::invalid_input, "class piece: expected [lo, hi]");
        double lo = p[0].get<double>();
        double hi = p[1].is_null() ? std::numeric_limits<double>::infinity() : p[1].get<double>();
        pieces.emplace_back(lo, hi);
    }
    return AppropriateClass::grid(denom, std::move(pieces));
}

} // namespace

NetworkFile parse_network(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(Error::Code::invalid_input, std::string("invalid JSON: ") + e.what());
    }
    try {
        NetworkFile nf;
        const json& jw = j.at("window");
        std::string kind = jw.at("kind").get<std::string>();
        if (kind == "ball") {
            Vec c = parse_coords(jw.at("center"), 0, "window.center");
            nf.varifold.arrangement.window = Window::make_ball(c, jw.at("radius").get<double>());
        } else if (kind == "box") {
            Vec lo = parse_coords(jw.at("min"), 0, "window.min");
            Vec hi = parse_coords(jw.at("max"), lo.size(), "window.max");
            nf.varifold.arrangement.window = Window::make_box(lo, hi);
        } else {
            throw Error(Error::Code::invalid_input, "window kind must be \"ball\" or \"box\"");
        }
        const std::size_t dim = nf.varifold.arrangement.dim();

        nf.varifold.density_class =
            j.contains("class") ? parse_class(j.at("class")) : AppropriateClass::integers();

        if (j.contains("vertices"))
            for (const auto& jv : j.at("vertices")) {
                std::string id = jv.at("id").get<std::string>();
                for (const auto& seen : nf.vertex_ids)
                    if (seen == id)
                        throw Error(Error::Code::invalid_input, "duplicate vertex id: " + id);
                nf.vertex_ids.push_back(id);
                nf.varifold.arrangement.vertices.push_back(
                    parse_coords(jv.at("coords"), dim, "vertex coords"));
            }

        auto parse_endpoint = [&](const json& je) {
            if (je.is_string()) {
                std::string id = je.get<std::string>();
                for (std::size_t i = 0; i < nf.vertex_ids.size(); ++i)
                    if (nf.vertex_ids[i] == id)
                        return Endpoint::at_vertex(static_cast<int>(i));
                throw Error(Error::Code::invalid_input, "unknown vertex id: " + id);
            }
            if (je.is_object() && je.contains("exit"))
                return Endpoint::at_exit(parse_coords(je.at("exit"), dim, "exit coords"));
            throw Error(Error::Code::invalid_input,
                        "edge endpoint must be a vertex id or {\"exit\": [...]}");
        };
        for (const auto& je : j.at("edges")) {
            std::string id = je.at("id").get<std::string>();
            for (const auto& seen : nf.edge_ids)
                if (seen == id)
                    throw Error(Error::Code::invalid_input, "duplicate edge id: " + id);
            nf.edge_ids.push_back(id);
            nf.varifold.arrangement.edges.push_back(
                Edge{parse_endpoint(je.at("from")), parse_endpoint(je.at("to"))});
            nf.varifold.mult.push_back(je.at("mult").get<double>());
        }

        if (j.contains("regions"))
            for (const auto& jr : j.at("regions")) {
                NamedRegion nr;
                nr.id = jr.at("id").get<std::string>();
                std::vector<Halfspace> hs;
                for (const auto& jh : jr.at("halfspaces"))
                    hs.push_back(Halfspace{parse_coords(jh.at("normal"), dim, "halfspace normal"),
                                           jh.at("offset").get<double>()});
                bool united = jr.contains("combine") && jr.at("combine") == "union";
                nr.region = united ? Region::union_of(std::move(hs))
                                   : Region::intersection_of(std::move(hs));
                if (jr.contains("complement") && jr.at("complement").get<bool>())
                    nr.region = nr.region.complemented();
                nf.regions.push_back(std::move(nr));
            }
        return nf;
    } catch (const json::exception& e) {
        throw Error(Error::Code::invalid_input, std::string("network file: ") + e.what());
    }
}

NetworkFile read_network(const std::string& path) { return parse_network(read_text_file(path)); }

std::string write_network(const NetworkFile& nf) {
    const auto& v = nf.varifold;
    JsonWriter w;
    w.begin_object();
    w.key("window").begin_object();
    if (v.arrangement.window.kind == Window::Kind::ball) {
        w.key("kind").value("ball");
        w.key("center").point(v.arrangement.window.center, true);
        w.key("radius").value_exact(v.arrangement.window.radius);
    } else {
        w.key("kind").value("box");
        w.key("min").point(v.arrangement.window.lo, true);
        w.key("max").point(v.arrangement.window.hi, true);
    }
    w.end_object();

    w.key("class").begin_object();
    if (v.density_class.kind == AppropriateClass::Kind::integers) {
        w.key("kind").value("integers");
    } else {
        w.key("kind").value("grid");
        w.key("denom").value(v.density_class.denom);
        w.key("pieces").begin_array();
        for (const auto& [lo, hi] : v.density_class.pieces) {
            w.begin_array().value_exact(lo);
            if (hi == std::numeric_limits<double>::infinity())
                w.null();
            else
                w.value_exact(hi);
            w.end_array();
        }
        w.end_array();
    }
    w.end_object();

    w.key("vertices").begin_array();
    for (std::size_t i = 0; i < v.arrangement.vertices.size(); ++i) {
        w.begin_object();
        w.key("id").value(nf.vertex_ids[i]);
        w.key("coords").point(v.arrangement.vertices[i], true);
        w.end_object();
    }
    w.end_array();

    w.key("edges").begin_array();
    for (std::size_t e = 0; e < v.arrangement.edges.size(); ++e) {
        const Edge& ed = v.arrangement.edges[e];
        w.begin_object();
        w.key("id").value(nf.edge_ids[e]);
        for (const auto& [name, ep] : {std::pair{"from", &ed.a}, std::pair{"to", &ed.b}}) {
            w.key(name);
            if (ep->is_vertex())
                w.value(nf.vertex_ids[static_cast<std::size_t>(ep->vertex)]);
            else
                w.begin_object().key("exit").point(ep->exit, true).end_object();
        }
        w.key("mult").value_exact(v.mult[e]);
        w.end_object();
    }
    w.end_array();

    if (!nf.regions.empty()) {
        w.key("regions").begin_array();
        for (const auto& nr : nf.regions) {
            w.begin_object();
            w.key("id").value(nr.id);
            w.key("halfspaces").begin_array();
            for (const auto& h : nr.region.halfspaces) {
                w.begin_object();
                w.key("normal").point(h.normal, true);
                w.key("offset").value_exact(h.offset);
                w.end_object();
            }
            w.end_array();
            if (nr.region.combine == Region::Combine::united)
                w.key("combine").value("union");
            if (nr.region.complement)
                w.key("complement").value(true);
            w.end_object();
        }
        w.end_array();
    }
    w.end_object();
    return w.str() + "\n";
}

void write_network_file(const NetworkFile& nf, const std::string& path) {
    write_text_file(path, write_network(nf));
}

NetworkFile wrap(PolyhedralVarifold v, std::vector<NamedRegion> regions) {
    NetworkFile nf;
    nf.varifold = std::move(v);
    for (std::size_t i = 0; i < nf.varifold.arrangement.vertices.size(); ++i)
        nf.vertex_ids.push_back("v" + std::to_string(i));
    for (std::size_t e = 0; e < nf.varifold.arrangement.edges.size(); ++e)
        nf.edge_ids.push_back("e" + std::to_string(e));
    nf.regions = std::move(regions);
    return nf;
}

namespace {

std::vector<double> parse_mult_map(const json& j, const NetworkFile& nf) {
    std::vector<double> values(nf.edge_ids.size(), 0.0);
    if (!j.is_object())
        throw Error(Error::Code::invalid_input, "\"mult\" must map edge ids to values");
    for (const auto& [id, val] : j.items())
        values[nf.edge_index(id)] = val.get<double>();
    return values;
}

} // namespace

SubMultiplicity parse_sub_multiplicity(const std::string& json_text, const NetworkFile& nf) {
    json j;
    try {
        j = json::parse(json_text);
        return SubMultiplicity{parse_mult_map(j.at("mult"), nf)};
    } catch (const json::exception& e) {
        throw Error(Error::Code::invalid_input, std::string("sub-multiplicity file: ") + e.what());
    }
}

SubMultiplicity read_sub_multiplicity(const std::string& path, const NetworkFile& nf) {
    return parse_sub_multiplicity(read_text_file(path), nf);
}

SplitMultiset parse_split_multiset(const std::string& json_text, const NetworkFile& nf) {
    json j;
    try {
        j = json::parse(json_text);
        SplitMultiset out;
        for (const auto& jp : j.at("parts")) {
            SplitPart part;
            part.count = jp.contains("count") ? jp.at("count").get<std::int64_t>() : 1;
            part.mult = parse_mult_map(jp.at("mult"), nf);
            out.parts.push_back(std::move(part));
        }
        return out;
    } catch (const json::exception& e) {
        throw Error(Error::Code::invalid_input, std::string("decomposition file: ") + e.what());
    }
}

SplitMultiset read_split_multiset(const std::string& path, const NetworkFile& nf) {
    return parse_split_multiset(read_text_file(path), nf);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Error::Code::invalid_input, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Error::Code::invalid_input, "cannot write file: " + path);
    out << content;
}

} // namespace varifold::io
