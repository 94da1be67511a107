#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "varifold/decompose.hpp"
#include "varifold/varifold.hpp"

namespace varifold::io {

/// Report numerics print with 12 significant digits; file coordinates use
/// the shortest exact round-trip form.
std::string format_double(double x);
std::string format_double_exact(double x);

/// Minimal streaming JSON emitter with deterministic, byte-stable output.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double x);
    JsonWriter& value_exact(double x);
    JsonWriter& value(std::int64_t x);
    JsonWriter& value(int x) { return value(static_cast<std::int64_t>(x)); }
    JsonWriter& value(bool b);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& point(const Vec& p, bool exact = false);
    JsonWriter& null();

    std::string str() const { return out_; }

private:
    void comma();
    std::string out_;
    std::vector<bool> first_;
};

struct NamedRegion {
    std::string id;
    Region region;
};

/// A network description file: window, density class, vertices, edges with
/// multiplicities, optional named regions.
struct NetworkFile {
    PolyhedralVarifold varifold;
    std::vector<std::string> vertex_ids; // aligned with arrangement vertices
    std::vector<std::string> edge_ids;   // aligned with arrangement edges
    std::vector<NamedRegion> regions;

    const Region& region(const std::string& id) const;
    std::size_t edge_index(const std::string& id) const;
};

NetworkFile parse_network(const std::string& json_text);
NetworkFile read_network(const std::string& path);
std::string write_network(const NetworkFile& nf);
void write_network_file(const NetworkFile& nf, const std::string& path);

/// Default ids (v0.., e0..) for a varifold built in code.
NetworkFile wrap(PolyhedralVarifold v, std::vector<NamedRegion> regions = {});

/// Sub-multiplicity file: {"mult": {"<edge-id>": value, ...}}, zeros omitted.
SubMultiplicity parse_sub_multiplicity(const std::string& json_text, const NetworkFile& nf);
SubMultiplicity read_sub_multiplicity(const std::string& path, const NetworkFile& nf);

/// Decomposition file: {"parts": [{"count": n, "mult": {...}}, ...]}.
SplitMultiset parse_split_multiset(const std::string& json_text, const NetworkFile& nf);
SplitMultiset read_split_multiset(const std::string& path, const NetworkFile& nf);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace varifold::io
