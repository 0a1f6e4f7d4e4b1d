#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fgr/fgr.hpp"

namespace fgr::cli {
namespace {

using nlohmann::ordered_json;

struct Options {
    std::string command;
    std::string file;
    std::vector<std::string> vertices;
    std::string lambda;
    std::string method;
    bool json = false;
    std::optional<int> cap;
    bool force = false;
    bool full = false;
};

/// Limits resolved from --cap, FGR_CAP and --force.
struct Limits {
    int degree_cap = Caps{}.degree;
    int pk_cap = OracleCap::kDefault;
    std::uint64_t embedding_cap = Caps{}.embeddings;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Hypermap load(const Options& o) {
    if (o.file.empty())
        throw InputError("command '" + o.command + "' needs an .emb file");
    try {
        return parse_emb(read_file(o.file));
    } catch (const ParseError& e) {
        throw ParseError(e.line(), o.file + ": " + std::string(e.what()));
    }
}

Method resolve_method(const std::string& text, bool oracle_fits) {
    if (text.empty())
        return oracle_fits ? Method::Both : Method::Formula;
    if (text == "formula")
        return Method::Formula;
    if (text == "oracle")
        return Method::Oracle;
    if (text == "both")
        return Method::Both;
    throw InputError("--method must be formula, oracle or both");
}

std::vector<std::string> selected_vertices(const Hypermap& h, const Options& o) {
    if (!o.vertices.empty()) {
        for (const std::string& v : o.vertices)
            h.vertex_index(v);
        return o.vertices;
    }
    std::vector<std::string> all;
    for (const Vertex& v : h.vertices())
        all.push_back(v.name);
    return all;
}

// Commands. Each writes human or JSON text to `out`.

void cmd_genus(const Options& o, std::ostream& out) {
    const Hypermap h = load(o);
    const int g = genus(h);
    if (o.json) {
        ordered_json j{{"half_edges", h.size()},   {"vertices", h.num_vertices()}, {"edges", h.num_edges()},
                       {"faces", h.num_faces()},   {"genus", g},                   {"betti", betti(h)},
                       {"map", h.is_map()}};
        out << j.dump(2) << '\n';
        return;
    }
    out << "faces: " << h.num_faces() << ", genus: " << g << '\n';
}

void cmd_faces(const Options& o, std::ostream& out) {
    const Hypermap h = load(o);
    const std::vector<Face> fs = faces(h);
    const std::vector<std::string> names = selected_vertices(h, o);
    if (o.json) {
        ordered_json j;
        j["faces"] = ordered_json::array();
        for (const Face& f : fs)
            j["faces"].push_back(f.cycle);
        j["incidence"] = ordered_json::object();
        for (const std::string& name : names)
            j["incidence"][name] = faces_at(h, name).q;
        out << j.dump(2) << '\n';
        return;
    }
    out << "faces: " << fs.size() << '\n';
    for (std::size_t i = 0; i < fs.size(); ++i) {
        out << "f" << i + 1 << ": (";
        for (std::size_t k = 0; k < fs[i].cycle.size(); ++k)
            out << (k ? " " : "") << fs[i].cycle[k];
        out << ")\n";
    }
    for (const std::string& name : names)
        out << "vertex " << name << ": q = " << faces_at(h, name).q << '\n';
}

void cmd_localize(const Options& o, std::ostream& out) {
    const Hypermap h = load(o);
    const PlanePermutation p = to_plane_permutation(h);
    ordered_json arr = ordered_json::array();
    for (const std::string& name : selected_vertices(h, o)) {
        const Vertex& v = h.vertex(name);
        const Localization loc = localize(p, v.rotation);
        const TwoLine t = loc.global_two_line();
        const std::string d = format_cycles(loc.d_nu, loc.labels);
        const CycleType type = cycle_type(loc.d_nu);
        if (o.json) {
            ordered_json runs = ordered_json::array();
            for (const auto& run : t.cycles) {
                ordered_json r = ordered_json::array();
                for (const Column& c : run)
                    r.push_back({c.top, c.bottom});
                runs.push_back(r);
            }
            arr.push_back({{"vertex", name},
                           {"degree", loc.degree()},
                           {"q", loc.q},
                           {"d_nu", d},
                           {"lambda", type.parts()},
                           {"two_line", runs}});
            continue;
        }
        out << "vertex " << name << " (degree " << loc.degree() << "): q = " << loc.q << ", D_nu = " << d
            << ", type " << type.str() << '\n'
            << render(t);
    }
    if (o.json)
        out << arr.dump(2) << '\n';
}

void cmd_reembed(const Options& o, const Limits& lim, std::ostream& out) {
    const Hypermap h = load(o);
    PkEngine engine(BaseSource::Auto, lim.pk_cap);
    ordered_json arr = ordered_json::array();
    for (const std::string& name : selected_vertices(h, o)) {
        const int degree = static_cast<int>(h.vertex(name).rotation.size());
        const Method m = resolve_method(o.method, degree <= lim.degree_cap);
        const GenusDistribution d = local_distribution(h, name, m, engine, lim.degree_cap);
        const GenusRange range = local_genus_range(h, name);
        if (o.json) {
            ordered_json rows = ordered_json::array();
            for (const auto& [dg, c] : d.dist)
                rows.push_back({{"dg", dg}, {"count", c.str()}, {"genus", d.genus + dg}});
            arr.push_back({{"vertex", d.vertex},
                           {"degree", d.degree},
                           {"q", d.q},
                           {"lambda", d.lambda.parts()},
                           {"genus", d.genus},
                           {"method", to_string(m)},
                           {"range", {range.min, range.max}},
                           {"total", d.total().str()},
                           {"distribution", rows}});
            continue;
        }
        out << "# vertex " << d.vertex << ": degree " << d.degree << ", q " << d.q << ", D_nu type "
            << d.lambda.str() << ", genus " << d.genus << ", method " << to_string(m);
        if (m == Method::Both)
            out << " (oracle and formula agree)";
        out << '\n' << "dg\tcount\tgenus\n";
        for (const auto& [dg, c] : d.dist)
            out << dg << '\t' << c << '\t' << d.genus + dg << '\n';
    }
    if (o.json)
        out << arr.dump(2) << '\n';
}

void cmd_range(const Options& o, std::ostream& out) {
    const Hypermap h = load(o);
    const int g = genus(h);
    if (o.vertices.size() > 1) {
        const GenusRange r = face_disjoint_range(h, o.vertices);
        if (o.json) {
            out << ordered_json{{"vertices", o.vertices}, {"min", r.min}, {"max", r.max}, {"genus", g}}.dump(2)
                << '\n';
            return;
        }
        out << "face-disjoint vertices:";
        for (const std::string& v : o.vertices)
            out << ' ' << v;
        out << '\n'
            << r.min << " <= dg <= " << r.max << " (genus " << g + r.min << ".." << g + r.max << ")\n";
        return;
    }
    ordered_json arr = ordered_json::array();
    for (const std::string& name : selected_vertices(h, o)) {
        const GenusRange r = local_genus_range(h, name);
        if (o.json) {
            arr.push_back({{"vertex", name}, {"min", r.min}, {"max", r.max}, {"genus", g}});
            continue;
        }
        out << "vertex " << name << ": " << r.min << " <= dg <= " << r.max << " (genus " << g + r.min << ".."
            << g + r.max << ")\n";
    }
    if (o.json)
        out << arr.dump(2) << '\n';
}

bool cmd_check_min(const Options& o, std::ostream& out) {
    const Hypermap h = load(o);
    const MinGenusReport r = min_genus_check(h);
    std::string failures;
    for (const MinGenusRow& row : r.rows)
        if (!row.pass)
            failures += std::string(failures.empty() ? "" : "; ") + "vertex " + row.vertex + ": " +
                        std::to_string(row.ell) + "+" + std::to_string(row.q) + " ≠ " +
                        std::to_string(row.degree + 1);
    if (o.json) {
        ordered_json rows = ordered_json::array();
        for (const MinGenusRow& row : r.rows)
            rows.push_back({{"vertex", row.vertex},
                            {"ell", row.ell},
                            {"q", row.q},
                            {"degree", row.degree},
                            {"pass", row.pass}});
        out << ordered_json{{"rows", rows}, {"satisfied", r.satisfied}}.dump(2) << '\n';
        return r.satisfied;
    }
    out << "vertex\tell\tq\tdeg+1\tresult\n";
    for (const MinGenusRow& row : r.rows)
        out << row.vertex << '\t' << row.ell << '\t' << row.q << '\t' << row.degree + 1 << '\t'
            << (row.pass ? "pass" : "FAIL") << '\n';
    if (r.satisfied)
        out << "minimum-genus necessary condition satisfied\n";
    else
        out << "NOT minimum genus (" << failures << ")\n";
    return r.satisfied;
}

bool cmd_check_max(const Options& o, std::ostream& out) {
    const Hypermap h = load(o);
    const MaxGenusReport r = max_genus_check(h);
    std::string failures;
    for (const MaxGenusRow& row : r.rows)
        if (!row.pass)
            failures += std::string(failures.empty() ? "" : "; ") + "vertex " + row.vertex +
                        ": q = " + std::to_string(row.q) + " > 2";
    if (o.json) {
        ordered_json rows = ordered_json::array();
        for (const MaxGenusRow& row : r.rows)
            rows.push_back({{"vertex", row.vertex}, {"q", row.q}, {"pass", row.pass}});
        out << ordered_json{{"rows", rows}, {"satisfied", r.satisfied}}.dump(2) << '\n';
        return r.satisfied;
    }
    out << "vertex\tq\tresult\n";
    for (const MaxGenusRow& row : r.rows)
        out << row.vertex << '\t' << row.q << '\t' << (row.pass ? "pass" : "FAIL") << '\n';
    if (r.satisfied)
        out << "maximum-genus necessary condition satisfied\n";
    else
        out << "NOT maximum genus (" << failures << ")\n";
    return r.satisfied;
}

void cmd_count_pk(const Options& o, const Limits& lim, std::ostream& out, std::ostream& err) {
    if (o.lambda.empty())
        throw InputError("count-pk needs --lambda");
    const CycleType lambda = CycleType::parse(o.lambda);
    const int n = lambda.size();
    const Method m = resolve_method(o.method, n <= lim.pk_cap);
    if (m != Method::Formula && lim.pk_cap > OracleCap::kDefault)
        err << "warning: oracle cap raised to " << lim.pk_cap << "; enumeration of (n-1)! cycles may be slow\n";
    PkTable table;
    std::optional<BigInt> stanley;
    if (m == Method::Oracle) {
        table = pk_oracle(lambda, lim.pk_cap);
    } else {
        PkEngine engine(BaseSource::Auto, lim.pk_cap);
        table = engine.table(lambda);
        if (m == Method::Both) {
            if (pk_oracle(lambda, lim.pk_cap) != table)
                throw ConsistencyError("recurrence and oracle tables differ for " + lambda.str());
            stanley = p1_stanley(lambda);
            if (*stanley != table.at(1))
                throw ConsistencyError("Stanley's formula and the oracle differ for " + lambda.str());
        }
    }
    table.check_invariants();
    if (o.json) {
        ordered_json counts = ordered_json::object();
        for (const auto& [k, c] : table.counts)
            counts[std::to_string(k)] = c.str();
        ordered_json j{{"lambda", lambda.parts()}, {"n", n}, {"method", to_string(m)}, {"counts", counts}};
        if (stanley)
            j["p1_stanley"] = stanley->str();
        out << j.dump(2) << '\n';
        return;
    }
    out << "# lambda " << lambda.str() << ", n " << n << ", method " << to_string(m);
    if (m == Method::Both)
        out << " (oracle, recurrence and Stanley agree)";
    out << '\n';
    for (const auto& [k, c] : table.counts)
        out << k << '\t' << c << '\n';
}

bool cmd_oneface_bound(const Options& o, const Limits& lim, std::ostream& out) {
    const Hypermap h = load(o);
    const UnderlyingGraph g = h.underlying_graph();
    const Rational bound = one_face_lower_bound(g);
    ordered_json j{{"lower_bound", to_string(bound)}};
    bool ok = true;
    std::ostringstream text;
    text << "lower bound (one-face probability, if any one-face embedding exists): " << to_string(bound) << '\n';
    if (embedding_count(g) <= lim.embedding_cap) {
        const OneFaceCount c = count_one_face_embeddings(g, lim.embedding_cap);
        const Rational prob(c.count, c.total);
        j["one_face_embeddings"] = c.count.str();
        j["embeddings"] = c.total.str();
        j["probability"] = to_string(prob);
        j["m"] = c.m;
        j["bound_holds"] = c.count == 0 || prob >= bound;
        text << "one-face embeddings: " << c.count << " of " << c.total << " (probability " << to_string(prob)
             << ")\n";
        if (c.count > 0) {
            text << "at least 2^m = " << (BigInt(1) << c.m) << " (m = " << c.m << "): "
                 << (c.bound_holds() ? "ok" : "VIOLATED") << '\n';
            text << "probability >= lower bound: " << (prob >= bound ? "ok" : "VIOLATED") << '\n';
            ok = c.bound_holds() && prob >= bound;
        }
    } else {
        text << "exact count skipped: " << embedding_count(g) << " embeddings exceed the cap\n";
    }
    if (h.num_faces() == 1) {
        PkEngine engine(BaseSource::Auto, lim.pk_cap);
        ordered_json per = ordered_json::array();
        for (const Vertex& v : h.vertices()) {
            const OneFaceProbability p = one_face_probability(h, v.name, engine);
            ok = ok && p.within_bounds() && p.above_universal();
            per.push_back({{"vertex", v.name},
                           {"probability", to_string(p.probability)},
                           {"lower", to_string(p.bounds.lower)},
                           {"upper", to_string(p.bounds.upper)},
                           {"universal", to_string(p.universal)}});
            text << "vertex " << v.name << ": prob1 = " << to_string(p.probability) << " in ["
                 << to_string(p.bounds.lower) << ", " << to_string(p.bounds.upper) << "], >= "
                 << to_string(p.universal) << ": " << (p.within_bounds() && p.above_universal() ? "ok" : "VIOLATED")
                 << '\n';
        }
        j["vertices"] = per;
    }
    if (o.json)
        out << j.dump(2) << '\n';
    else
        out << text.str();
    return ok;
}

void cmd_enumerate(const Options& o, const Limits& lim, std::ostream& out) {
    const Hypermap h = load(o);
    const UnderlyingGraph g = h.underlying_graph();
    std::map<int, std::uint64_t> by_genus;
    std::uint64_t total = 0;
    all_embeddings(
        g,
        [&](const Hypermap& e) {
            ++by_genus[genus(e)];
            ++total;
        },
        lim.embedding_cap);
    if (o.json) {
        ordered_json d = ordered_json::object();
        for (const auto& [gg, c] : by_genus)
            d[std::to_string(gg)] = c;
        out << ordered_json{{"embeddings", total}, {"genus_distribution", d}}.dump(2) << '\n';
        return;
    }
    out << "embeddings: " << total << '\n' << "genus\tcount\n";
    for (const auto& [gg, c] : by_genus)
        out << gg << '\t' << c << '\n';
}

bool cmd_selftest(const Options& o, std::ostream& out) {
    const int max_n = o.full ? 8 : 7;
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::size_t tables = 0;
    PkEngine engine(BaseSource::RestrictedOracle, OracleCap::kDefault);
    for (int n = 1; n <= max_n; ++n)
        for (const CycleType& lambda : partitions_of(n)) {
            const PkTable oracle = pk_oracle(lambda);
            const PkTable rec = engine.table(lambda);
            bool good = oracle == rec && p1_stanley(lambda) == oracle.at(1);
            try {
                oracle.check_invariants();
            } catch (const ConsistencyError&) {
                good = false;
            }
            if (!good)
                out << "FAIL p_k " << lambda.str() << '\n';
            ok = ok && good;
            ++tables;
        }
    out << (ok ? "PASS" : "FAIL") << " oracle = recurrence = Stanley for all " << tables << " partitions of n <= "
        << max_n << '\n';

    bool sweep_ok = true;
    std::uint64_t checks = 0, graphs = 0;
    PkEngine formula_engine;
    for (const UnderlyingGraph& g : graph_corpus(max_n / 2)) {
        const SweepStats s = cross_validate_graph(g, formula_engine);
        checks += s.checks;
        ++graphs;
        for (const std::string& f : s.failures)
            out << "FAIL " << f << '\n';
        sweep_ok = sweep_ok && s.failures.empty();
    }
    out << (sweep_ok ? "PASS" : "FAIL") << " local genus distribution: formula = oracle, support = local range ("
        << checks << " vertex checks over " << graphs << " graphs with <= " << max_n / 2 << " edges)\n";
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << "selftest " << (ok && sweep_ok ? "passed" : "FAILED") << " in " << static_cast<int>(secs * 1000)
        << " ms\n";
    return ok && sweep_ok;
}

} // namespace

CommandResult run(const std::vector<std::string>& args, const std::string& cap_env) {
    CLI::App app{"Exact local genus analysis of graph embeddings", "fatgraph-reembed"};
    app.require_subcommand(1);
    Options o;

    struct Spec {
        const char* name;
        const char* help;
        bool takes_file;
    };
    const Spec specs[] = {
        {"genus", "faces and genus of an embedding", true},
        {"faces", "face cycles and incident-face counts", true},
        {"localize", "localization of a vertex (two-line form, D_nu, q)", true},
        {"reembed", "genus-change distribution over all rotations of a vertex", true},
        {"range", "achievable local genus range (face-disjoint sums for several vertices)", true},
        {"check-min-genus", "necessary condition for minimum genus", true},
        {"check-max-genus", "necessary condition for maximum genus", true},
        {"count-pk", "table of p_k^lambda(n)", false},
        {"oneface-bound", "one-face probability bounds and counts", true},
        {"enumerate", "genus distribution over all embeddings of the graph", true},
        {"write", "re-emit the embedding in canonical .emb form", true},
        {"selftest", "exhaustive oracle cross-checks", false},
    };
    for (const Spec& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        if (s.takes_file)
            sub->add_option("file", o.file, ".emb input file")->required();
        sub->add_option("--vertex", o.vertices, "vertex name (repeatable)");
        sub->add_option("--lambda", o.lambda, "partition, e.g. 3,1");
        sub->add_option("--method", o.method, "formula | oracle | both");
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_option("--cap", o.cap, "oracle cap (vertex degree / n)");
        sub->add_flag("--force", o.force, "ignore enumeration caps");
        sub->add_flag("--full", o.full, "selftest: n <= 8 instead of n <= 7");
        sub->final_callback([&o, name = std::string(s.name)] { o.command = name; });
    }

    CommandResult result;
    std::ostringstream out, err;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        result.exit_code = code == 0 ? kOk : kInputError;
        result.out = out.str();
        result.err = err.str();
        return result;
    }

    try {
        Limits lim;
        std::optional<int> cap = o.cap;
        if (!cap && !cap_env.empty()) {
            try {
                cap = std::stoi(cap_env);
            } catch (const std::exception&) {
                throw InputError("FGR_CAP must be an integer");
            }
        }
        if (cap) {
            if (*cap < 1)
                throw InputError("cap must be positive");
            lim.degree_cap = *cap;
            lim.pk_cap = *cap;
        }
        if (o.force) {
            lim.degree_cap = std::max(lim.degree_cap, 64);
            lim.pk_cap = OracleCap::kMaximum;
            lim.embedding_cap = UINT64_MAX;
        }
        if (lim.pk_cap > OracleCap::kMaximum) {
            if (!o.force && cap && *cap > OracleCap::kMaximum && o.command == "count-pk")
                throw CapExceeded("the p_k oracle cap cannot exceed " + std::to_string(OracleCap::kMaximum));
            lim.pk_cap = OracleCap::kMaximum;
        }

        bool verdict = true;
        if (o.command == "genus")
            cmd_genus(o, out);
        else if (o.command == "faces")
            cmd_faces(o, out);
        else if (o.command == "localize")
            cmd_localize(o, out);
        else if (o.command == "reembed")
            cmd_reembed(o, lim, out);
        else if (o.command == "range")
            cmd_range(o, out);
        else if (o.command == "check-min-genus")
            verdict = cmd_check_min(o, out);
        else if (o.command == "check-max-genus")
            verdict = cmd_check_max(o, out);
        else if (o.command == "count-pk")
            cmd_count_pk(o, lim, out, err);
        else if (o.command == "oneface-bound")
            verdict = cmd_oneface_bound(o, lim, out);
        else if (o.command == "enumerate")
            cmd_enumerate(o, lim, out);
        else if (o.command == "write")
            out << write_emb(load(o));
        else if (o.command == "selftest")
            verdict = cmd_selftest(o, out);
        result.exit_code = verdict ? kOk : kConditionFailed;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << " (use --cap or --force)\n";
        result.exit_code = kCapExceeded;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        result.exit_code = kInputError;
    } catch (const ConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << '\n';
        result.exit_code = kConditionFailed;
    }
    result.out = out.str();
    result.err = err.str();
    return result;
}

} // namespace fgr::cli
