#include "varifold/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "varifold/decompose.hpp"
#include "varifold/fixtures.hpp"
#include "varifold/io.hpp"
#include "varifold/svg.hpp"
#include "varifold/variation.hpp"

namespace varifold::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;
constexpr int kUndecided = 3;

Vec parse_point(const std::string& s) {
    Vec out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stod(item));
    if (out.size() < 2)
        throw Error(Error::Code::invalid_input, "expected comma-separated coordinates: " + s);
    return out;
}

// "x,y,...,r": center plus radius
std::pair<Vec, double> parse_ball(const std::string& s) {
    Vec all = parse_point(s);
    double r = all.back();
    all.pop_back();
    if (all.size() < 2 || !(r > 0))
        throw Error(Error::Code::invalid_input, "expected center coordinates and radius: " + s);
    return {all, r};
}

SearchOptions search_options() {
    SearchOptions opts;
    if (const char* cap = std::getenv("VARIFOLD_CAP"))
        opts.node_cap = std::strtoull(cap, nullptr, 10);
    return opts;
}

io::NetworkFile load_validating(const std::string& path) {
    io::NetworkFile nf = io::read_network(path);
    Diagnostics d = validate(nf.varifold);
    if (!d.valid())
        throw Error(Error::Code::invalid_input,
                    path + ": network does not validate: " + d.violations[0].code + " (" +
                        d.violations[0].detail + ")");
    return nf;
}

void emit_atoms(io::JsonWriter& w, const VectorAtomMeasure& m) {
    w.key("atoms").begin_array();
    for (const auto& a : m.atoms) {
        w.begin_object();
        w.key("point").point(a.point);
        w.key("vector").point(a.vector);
        w.end_object();
    }
    w.end_array();
}

void emit_mult_map(io::JsonWriter& w, const io::NetworkFile& nf,
                   const std::vector<double>& values) {
    w.begin_object();
    for (std::size_t e = 0; e < values.size(); ++e)
        if (values[e] > 1e-12)
            w.key(nf.edge_ids[e]).value(values[e]);
    w.end_object();
}

void emit_multiset(io::JsonWriter& w, const io::NetworkFile& nf, const SplitMultiset& d) {
    w.begin_array();
    for (const auto& p : d.parts) {
        w.begin_object();
        w.key("count").value(p.count);
        w.key("mult");
        emit_mult_map(w, nf, p.mult);
        w.end_object();
    }
    w.end_array();
}

struct DemoSpec {
    const char* name;
    const char* file;
};

io::NetworkFile demo_network(const std::string& name) {
    if (name == "six-rays") {
        auto region = Region::intersection_of({Halfspace{{0.0, 1.0}, 0.3}});
        return io::wrap(fixtures::six_rays(), {{"upper", region}});
    }
    if (name == "tent") {
        auto region = Region::intersection_of({Halfspace{{0.0, 1.0}, 0.25}});
        return io::wrap(fixtures::tent(), {{"upper", region}});
    }
    if (name == "y-junction") {
        auto region = Region::intersection_of({Halfspace{{1.0, 0.0}, 0.5}});
        return io::wrap(fixtures::y_junction(), {{"right", region}});
    }
    throw Error(Error::Code::invalid_input,
                "unknown demo \"" + name + "\" (available: six-rays, tent, y-junction)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polyhedral varifold calculator: first variation, boundaries, decompositions"};
    app.require_subcommand(1);

    std::string input, other, m_file, d_file, region_id, at_str, ball_str, out_path, demo_name;
    double r_arg = 0, c_arg = 0, d_arg = 0;
    std::optional<std::uint64_t> randomize;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "network JSON file")->required();
    };

    auto* c_validate = app.add_subcommand("validate", "check all invariants, report violations");
    add_input(c_validate);
    auto* c_delta = app.add_subcommand("delta", "print the first-variation atoms of dV");
    add_input(c_delta);
    auto* c_density = app.add_subcommand("density", "1-density of the weight at a point");
    add_input(c_density);
    c_density->add_option("--at", at_str, "point x,y,...")->required();
    auto* c_mass = app.add_subcommand("mass", "weight of a closed ball");
    add_input(c_mass);
    c_mass->add_option("--ball", ball_str, "center and radius x,y,...,r")->required();
    auto* c_boundary = app.add_subcommand("boundary", "distributional V boundary of a region");
    add_input(c_boundary);
    c_boundary->add_option("--region", region_id, "region id from the input file")->required();
    auto* c_split = app.add_subcommand("split-check", "test the split condition for W <= V");
    add_input(c_split);
    c_split->add_option("--m", m_file, "sub-multiplicity JSON file")->required();
    auto* c_indec = app.add_subcommand("indecomposable", "decide indecomposability");
    add_input(c_indec);
    auto* c_decomp = app.add_subcommand("decompose", "construct a decomposition");
    add_input(c_decomp);
    c_decomp->add_option("--randomize", randomize,
                         "seed for randomized split selection (exhibits non-uniqueness)");
    auto* c_enum = app.add_subcommand("enumerate", "list all decompositions (small instances)");
    add_input(c_enum);
    auto* c_verify = app.add_subcommand("verify", "check the three decomposition conditions");
    add_input(c_verify);
    c_verify->add_option("--decomposition", d_file, "decomposition JSON file")->required();
    auto* c_dist = app.add_subcommand("distance", "strong-topology distance on a compact set");
    add_input(c_dist);
    c_dist->add_option("--other", other, "second network JSON file")->required();
    c_dist->add_option("--ball", ball_str, "seminorm ball x,y,...,r")->required();
    auto* c_apriori = app.add_subcommand("apriori", "a-priori lower bound check");
    add_input(c_apriori);
    c_apriori->add_option("--at", at_str, "center point x,y,...")->required();
    c_apriori->add_option("--r", r_arg, "radius")->required();
    c_apriori->add_option("--c", c_arg, "first-variation bound")->required();
    c_apriori->add_option("--d", d_arg, "density lower bound")->required();
    auto* c_render = app.add_subcommand("render", "write an SVG picture");
    add_input(c_render);
    c_render->add_option("--out", out_path, "output SVG path")->required();
    auto* c_demo = app.add_subcommand("demo", "write a built-in fixture to a file");
    c_demo->add_option("name", demo_name, "six-rays | tent | y-junction")->required();
    c_demo->add_option("--out", out_path, "output path (default <name>.json)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kInputError;
    }

    const SearchOptions opts = search_options();
    io::JsonWriter w;
    int code = kOk;
    try {
        if (c_validate->parsed()) {
            io::NetworkFile nf = io::read_network(input);
            Diagnostics d = validate(nf.varifold);
            w.begin_object();
            w.key("valid").value(d.valid());
            w.key("violations").begin_array();
            for (const auto& v : d.violations) {
                w.begin_object();
                w.key("code").value(v.code);
                w.key("detail").value(v.detail);
                w.end_object();
            }
            w.end_array().end_object();
            code = d.valid() ? kOk : kFalse;
        } else if (c_delta->parsed()) {
            io::NetworkFile nf = load_validating(input);
            w.begin_object();
            emit_atoms(w, first_variation(nf.varifold));
            w.end_object();
        } else if (c_density->parsed()) {
            io::NetworkFile nf = load_validating(input);
            w.begin_object();
            w.key("density").value(density(nf.varifold, parse_point(at_str)));
            w.end_object();
        } else if (c_mass->parsed()) {
            io::NetworkFile nf = load_validating(input);
            auto [center, radius] = parse_ball(ball_str);
            w.begin_object();
            w.key("mass").value(weight_ball_mass(nf.varifold, center, radius));
            w.end_object();
        } else if (c_boundary->parsed()) {
            io::NetworkFile nf = load_validating(input);
            w.begin_object();
            emit_atoms(w, v_boundary(nf.varifold, nf.region(region_id)));
            w.end_object();
        } else if (c_split->parsed()) {
            io::NetworkFile nf = load_validating(input);
            SubMultiplicity m = io::read_sub_multiplicity(m_file, nf);
            bool ok = check_split(nf.varifold, m);
            w.begin_object();
            w.key("split").value(ok);
            w.end_object();
            code = ok ? kOk : kFalse;
        } else if (c_indec->parsed()) {
            io::NetworkFile nf = load_validating(input);
            auto split = find_split(nf.varifold, opts);
            w.begin_object();
            w.key("indecomposable").value(!split.has_value());
            if (split) {
                w.key("split");
                emit_mult_map(w, nf, split->values);
            }
            w.end_object();
            code = split ? kFalse : kOk;
        } else if (c_decomp->parsed()) {
            io::NetworkFile nf = load_validating(input);
            SearchOptions o = opts;
            o.randomize_seed = randomize;
            Decomposition d = decompose(nf.varifold, o);
            w.begin_object();
            w.key("complete").value(d.complete);
            w.key("parts");
            emit_multiset(w, nf, d.split);
            if (!d.undecided.empty()) {
                w.key("undecided").begin_array();
                for (const auto& u : d.undecided)
                    emit_mult_map(w, nf, u);
                w.end_array();
            }
            w.end_object();
            code = d.complete ? kOk : kUndecided;
        } else if (c_enum->parsed()) {
            io::NetworkFile nf = load_validating(input);
            EnumerationCaps caps;
            caps.node_cap = opts.node_cap;
            auto all = enumerate_decompositions(nf.varifold, caps);
            w.begin_object();
            w.key("count").value(static_cast<std::int64_t>(all.size()));
            w.key("decompositions").begin_array();
            for (const auto& d : all)
                emit_multiset(w, nf, d);
            w.end_array().end_object();
        } else if (c_verify->parsed()) {
            io::NetworkFile nf = load_validating(input);
            SplitMultiset d = io::read_split_multiset(d_file, nf);
            VerifyReport rep = verify_decomposition(nf.varifold, d, opts);
            w.begin_object();
            w.key("pass").value(rep.pass);
            if (!rep.pass) {
                w.key("failed_condition").value(rep.failed_condition);
                w.key("reason").value(rep.reason);
            }
            w.end_object();
            code = rep.pass ? kOk : kFalse;
        } else if (c_dist->parsed()) {
            io::NetworkFile nf = load_validating(input);
            io::NetworkFile ng = load_validating(other);
            auto [center, radius] = parse_ball(ball_str);
            w.begin_object();
            w.key("distance").value(strong_distance(nf.varifold, ng.varifold,
                                                    ClipShape::make_ball(center, radius)));
            w.end_object();
        } else if (c_apriori->parsed()) {
            io::NetworkFile nf = load_validating(input);
            AprioriReport rep = apriori_check(nf.varifold, parse_point(at_str), r_arg, c_arg, d_arg);
            w.begin_object();
            w.key("hypotheses_hold").value(rep.hypotheses_hold);
            w.key("lower_bound").value(rep.lower_bound);
            w.key("actual").value(rep.actual);
            w.key("margin").value(rep.margin);
            w.end_object();
            code = (!rep.hypotheses_hold || rep.margin >= -1e-9) ? kOk : kFalse;
        } else if (c_render->parsed()) {
            io::NetworkFile nf = load_validating(input);
            io::write_text_file(out_path, svg::render(nf.varifold));
            w.begin_object();
            w.key("written").value(out_path);
            w.end_object();
        } else if (c_demo->parsed()) {
            io::NetworkFile nf = demo_network(demo_name);
            std::string path = out_path.empty() ? demo_name + ".json" : out_path;
            io::write_network_file(nf, path);
            w.begin_object();
            w.key("written").value(path);
            w.end_object();
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == Error::Code::cap_exceeded ? kUndecided : kInputError;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kInputError;
    }

    out << w.str() << "\n";
    return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace varifold::cli
