#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvq/tvq.hpp"

using json = nlohmann::ordered_json;
using namespace tvq;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Triangulation load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_triangulation(buf.str());
}

Skeleton checked_skeleton(const Triangulation &tri) {
    Skeleton s = build_skeleton(tri);
    require_closed_manifold(tri, s);
    return s;
}

json exact_json(const CycElement &a) {
    json out = json::array();
    for (std::size_t k = 0; k < a.numerators().size(); ++k)
        out.push_back(a.coefficient(k).get_str());
    return out;
}

json stats_json(const EnumerationStats &st) {
    return {{"admissible", st.admissibleCount}, {"nodesVisited", st.nodesVisited}, {"leavesVisited", st.leavesVisited}};
}

std::vector<int> parse_class(const std::string &bits) {
    std::vector<int> out;
    for (char ch : bits) {
        if (ch != '0' && ch != '1')
            throw UsageError("--class expects a string of 0s and 1s");
        out.push_back(ch - '0');
    }
    return out;
}

std::string format_colouring(const Colouring &c) {
    std::string out;
    for (std::size_t e = 0; e < c.doubled.size(); ++e) {
        if (e)
            out += ' ';
        int d = c.doubled[e];
        out += (d % 2) ? std::to_string(d) + "/2" : std::to_string(d / 2);
    }
    return out;
}

struct ComputeOptions {
    std::string file;
    int r = 0, q = 1, threads = 1, digits = 12;
    std::string algorithm = "auto";
    std::string classBits;
    bool hasClass = false, asJson = false, timing = false;
};

int run_compute(const ComputeOptions &o) {
    Triangulation tri = load(o.file);
    Skeleton s = checked_skeleton(tri);
    FieldContext ctx(o.r, o.q);

    std::string algo = o.algorithm;
    if (o.hasClass) {
        if (algo != "auto" && algo != "naive")
            throw UsageError("--class is only supported by the naive algorithm");
        algo = "naive";
    } else if (algo == "auto") {
        if (o.r == 4)
            algo = "tv4";
        else if (o.r % 2 == 1 && o.q == 1 && s.v == 1)
            algo = "odd-fast";
        else {
            algo = "naive";
            if (o.r % 2 == 1 && o.q == 1)
                std::cerr << "note: odd-fast needs a one-vertex triangulation (crushing is not implemented); "
                             "using naive\n";
        }
    }
    if (algo == "tv4" && o.r != 4)
        throw UsageError("--algorithm tv4 requires --r 4");
    if (algo == "odd-fast" && (o.r % 2 == 0 || o.q != 1 || s.v != 1))
        throw UsageError("--algorithm odd-fast requires odd r, q = 1 and a one-vertex triangulation");

    auto start = std::chrono::steady_clock::now();
    StateSum result{ctx.zero(), {}};
    if (o.hasClass)
        result = tv_at_class(s, ctx, parse_class(o.classBits), o.threads);
    else if (algo == "naive")
        result = tv(s, ctx, o.threads);
    else if (algo == "tv4")
        result = tv4_structured(s, ctx);
    else if (algo == "odd-fast") {
        auto odd = tv_odd_fast(s, ctx, o.threads);
        result = {odd.value, odd.stats};
    } else
        throw UsageError("unknown algorithm " + algo);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    auto [re, im] = ctx.numeric_eval(result.value, o.digits);
    if (o.asJson) {
        json doc;
        doc["input"] = o.file;
        doc["r"] = o.r;
        doc["q"] = o.q;
        doc["algorithm"] = algo;
        if (o.hasClass)
            doc["class"] = o.classBits;
        doc["exact"] = exact_json(result.value);
        doc["decimal"] = {{"re", re}, {"im", im}};
        doc["counts"] = stats_json(result.stats);
        if (o.timing)
            doc["wallTimeSeconds"] = seconds;
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << "algorithm " << algo << '\n'
                  << "exact     " << result.value << '\n'
                  << "decimal   " << re << (im == "0" ? "" : " + " + im + "i") << '\n'
                  << "admissible " << result.stats.admissibleCount << ", nodes " << result.stats.nodesVisited << '\n';
        if (o.timing)
            std::cerr << "time " << seconds << " s\n";
    }
    return 0;
}

int run_enumerate(const std::string &file, int r, bool countOnly, bool integerOnly) {
    Triangulation tri = load(file);
    Skeleton s = checked_skeleton(tri);
    ColouringSearch search(s, r, {integerOnly, std::nullopt});
    auto stats = search.for_each([&](const Colouring &c) {
        if (!countOnly)
            std::cout << format_colouring(c) << '\n';
    });
    std::cout << "count " << stats.admissibleCount << " nodes " << stats.nodesVisited << " leaves "
              << stats.leavesVisited << '\n';
    return 0;
}

json bounds_json(const BoundReport &b) {
    auto opt = [](const std::optional<std::uint64_t> &x) { return x ? json(*x) : json(nullptr); };
    return {{"r", b.r},
            {"n", b.n},
            {"v", b.v},
            {"betti1", b.betti1},
            {"naive", b.naive},
            {"eqLong", opt(b.eqLong)},
            {"eqShort", opt(b.eqShort)},
            {"homSphereBound", opt(b.homSphereBound)},
            {"smallR", opt(b.smallR)},
            {"actual", b.actual},
            {"nodes", stats_json(b.nodes)},
            {"sharp", {{"eqLong", b.sharp_long()}, {"eqShort", b.sharp_short()}, {"smallR", b.sharp_small_r()}}},
            {"consistent", b.consistent()}};
}

int run_bounds(const std::string &file, int r) {
    Triangulation tri = load(file);
    std::cout << bounds_json(bounds(checked_skeleton(tri), r)).dump(2) << '\n';
    return 0;
}

int run_census(int tets, bool oneVertex, bool z2hs, const std::string &outDir) {
    auto list = enumerate_census(tets, {oneVertex, z2hs, std::nullopt});
    if (!outDir.empty())
        std::filesystem::create_directories(outDir);
    for (std::size_t k = 0; k < list.size(); ++k) {
        Skeleton s = build_skeleton(list[k]);
        auto h = h1_integral(s);
        std::string h1 = h.rank ? "Z^" + std::to_string(h.rank) : "";
        for (auto &t : h.torsion)
            h1 += (h1.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
        if (h1.empty())
            h1 = "0";
        std::ostringstream header;
        header << "# census n=" << tets << " index=" << k << " v=" << s.v << " betti1_z2=" << betti_z2(s, 1)
               << " H1=" << h1 << '\n';
        std::string doc = serialise(list[k]);
        if (outDir.empty()) {
            std::cout << header.str() << doc;
        } else {
            auto path = std::filesystem::path(outDir) / ("census_n" + std::to_string(tets) + "_" + std::to_string(k) + ".tri");
            std::ofstream(path) << header.str() << doc;
            std::cout << path.string() << "  " << header.str().substr(2);
        }
    }
    std::cerr << list.size() << " triangulation(s)\n";
    return 0;
}

int run_verify(const std::string &file, int r) {
    Triangulation tri = load(file);
    Skeleton s = checked_skeleton(tri);
    int failures = 0;
    auto check = [&](bool ok, const std::string &what) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << '\n';
        failures += ok ? 0 : 1;
    };
    const int b1 = betti_z2(s, 1);
    check(s.euler_characteristic() == 0 && s.e == s.n + s.v && s.f == 2 * s.n, "face counts: e = n + v, f = 2n, chi = 0");

    EnumerationStats st3;
    auto adm3 = enumerate_admissible(s, 3, {}, &st3);
    check(adm3.size() == (std::size_t{1} << (s.v + b1 - 1)), "|Adm(T,3)| = 2^(v+b1-1) = " + std::to_string(adm3.size()));

    FieldContext ctx(r, 1);
    auto adm = enumerate_admissible(s, r);
    bool cocycles = true;
    for (const auto &c : adm)
        cocycles = cocycles && is_cocycle(s, reduce_colouring(s, c));
    check(cocycles, "reductions of all " + std::to_string(adm.size()) + " colourings in Adm(T,r) are cocycles");

    bool arcs = true;
    std::map<std::array<int, 6>, bool> symbols;
    for (const auto &c : adm) {
        for (const auto &edges : s.triangleEdges) {
            auto a = normal_arc_counts(c.doubled[static_cast<std::size_t>(edges[0])],
                                       c.doubled[static_cast<std::size_t>(edges[1])],
                                       c.doubled[static_cast<std::size_t>(edges[2])]);
            arcs = arcs && a[0] + a[1] + a[2] <= r - 2;
        }
        for (int t = 0; t < s.n; ++t)
            symbols.emplace(tetrahedron_colours(s, c, t), false);
    }
    check(arcs, "normal arcs per triangle <= r - 2");
    bool loops = true;
    for (auto &[colours, ok] : symbols) {
        auto sym = IntersectionSymbol::from_colours(colours);
        auto dec = decompose_symbol(sym);
        ok = reconstruct(dec) == sym && tet_weight_loop(ctx, dec) == tetrahedron_weight(ctx, colours);
        std::cout << "       symbol " << sym.str() << " -> " << dec << (ok ? "  weights agree" : "  MISMATCH") << '\n';
        loops = loops && ok;
    }
    check(loops, "loop-coordinate weight equals the 6j weight on " + std::to_string(symbols.size()) + " symbols");

    auto naive = tv(s, ctx);
    check(naive.value == tv(s, ctx, 4).value, "state sum independent of thread count");
    CycElement classSum = ctx.zero();
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << b1); ++mask) {
        std::vector<int> cls;
        for (int k = 0; k < b1; ++k)
            cls.push_back(static_cast<int>(mask >> k & 1u));
        classSum += tv_at_class(s, ctx, cls).value;
    }
    check(classSum == naive.value, "sum over cohomology classes equals TV");
    if (r == 4)
        check(tv4_structured(s, ctx).value == naive.value, "structured TV_4 equals naive TV_4");
    if (r % 2 == 1 && s.v == 1)
        check(tv_odd_fast(s, ctx).value == naive.value, "odd-r fast algorithm equals naive TV_r");

    int internal = -1;
    for (int f = 0; f < s.f && internal < 0; ++f) {
        auto [t, face] = s.triangleRep[static_cast<std::size_t>(f)];
        auto g = tri.gluing(t, face);
        if (g && g->tet != t)
            internal = f;
    }
    if (internal >= 0) {
        Triangulation moved = pachner_23(tri, s, internal);
        Skeleton ms = build_skeleton(moved);
        check(validate_closed_3manifold(moved, ms).valid_closed_manifold() && tv(ms, ctx).value == naive.value,
              "2-3 move preserves validity and TV_r");
    } else {
        std::cout << "[skip] no triangle between distinct tetrahedra for a 2-3 move\n";
    }
    check(bounds(s, r).consistent(), "admissible count respects every applicable bound");
    std::cout << (failures ? "verification FAILED\n" : "verification passed\n");
    return failures ? kExitVerify : 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Turaev-Viro invariants of 3-manifold triangulations"};
    app.require_subcommand(1);

    ComputeOptions co;
    auto *compute = app.add_subcommand("compute", "compute TV_{r,q}");
    compute->add_option("--file", co.file)->required();
    compute->add_option("--r", co.r)->required()->check(CLI::Range(3, 64));
    compute->add_option("--q", co.q);
    compute->add_option("--algorithm", co.algorithm)->check(CLI::IsMember({"auto", "naive", "tv4", "odd-fast"}));
    auto *classOpt = compute->add_option("--class", co.classBits, "cohomology class coordinates, e.g. 01");
    compute->add_flag("--json", co.asJson);
    compute->add_option("--threads", co.threads)->check(CLI::Range(1, 256));
    compute->add_option("--digits", co.digits)->check(CLI::Range(1, 1000));
    compute->add_flag("--timing", co.timing, "report wall time");

    std::string file;
    int r = 0;
    bool countOnly = false, integerOnly = false;
    auto *enumerate = app.add_subcommand("enumerate", "list admissible colourings");
    enumerate->add_option("--file", file)->required();
    enumerate->add_option("--r", r)->required()->check(CLI::Range(3, 64));
    enumerate->add_flag("--count-only", countOnly);
    enumerate->add_flag("--integer-only", integerOnly);

    auto *bound = app.add_subcommand("bounds", "bounds on the number of admissible colourings");
    bound->add_option("--file", file)->required();
    bound->add_option("--r", r)->required()->check(CLI::Range(3, 64));

    int tets = 1;
    bool oneVertex = false, z2hs = false;
    std::string outDir;
    auto *census = app.add_subcommand("census", "generate closed triangulations up to isomorphism");
    census->add_option("--tets", tets)->required()->check(CLI::Range(1, kMaxCensusTets));
    census->add_flag("--one-vertex", oneVertex);
    census->add_flag("--z2hs", z2hs);
    census->add_option("--out", outDir);

    auto *verify = app.add_subcommand("verify", "run the cross-check suite on one input");
    verify->add_option("--file", file)->required();
    verify->add_option("--r", r)->required()->check(CLI::Range(3, 64));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        co.hasClass = classOpt->count() > 0;
        if (*compute)
            return run_compute(co);
        if (*enumerate)
            return run_enumerate(file, r, countOnly, integerOnly);
        if (*bound)
            return run_bounds(file, r);
        if (*census)
            return run_census(tets, oneVertex, z2hs, outDir);
        if (*verify)
            return run_verify(file, r);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InvalidTriangulation &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerify;
    }
    return kExitUsage;
}
