// Acceptance checks: one [PASS]/[FAIL] line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "corpus.hpp"

using namespace tvq;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int id, bool ok, const std::string &detail) {
    std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

void info(const std::string &detail) {
    std::printf("[INFO]    %s\n", detail.c_str());
    std::fflush(stdout);
}

void guarded(int id, const std::function<void()> &body) {
    try {
        body();
    } catch (const std::exception &e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::vector<int> valid_q(int r) {
    std::vector<int> out;
    for (int q = 1; q < 2 * r; ++q)
        if (std::gcd(q, r) == 1)
            out.push_back(q);
    return out;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t out = 1;
    while (e-- > 0)
        out *= b;
    return out;
}

std::vector<Triangulation> z2hs(int n) { return enumerate_census(n, {true, true, std::nullopt}); }

std::vector<Triangulation> one_vertex_census() { return corpus::one_vertex_upto(kMaxCensusTets); }

bool admissible_tet(int r, const std::array<int, 6> &c) {
    return admissible_doubled(r, c[0], c[1], c[3]) && admissible_doubled(r, c[0], c[2], c[4]) &&
           admissible_doubled(r, c[1], c[2], c[5]) && admissible_doubled(r, c[3], c[4], c[5]);
}

std::array<int, 6> flat(const IntersectionSymbol &s) {
    return {s.m[0][0], s.m[0][1], s.m[0][2], s.m[1][0], s.m[1][1], s.m[1][2]};
}

bool same_loops(const LoopDecomposition &x, const LoopDecomposition &y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d && x.p == y.p &&
           balanced_row(x.rotation, x.i, x.j) == balanced_row(y.rotation, y.i, y.j);
}

void census_counts() {
    auto start = Clock::now();
    auto n1 = z2hs(1).size(), n2 = z2hs(2).size();
    double t = seconds_since(start);
    report(1, n1 == 2 && n2 == 7 && t < 60,
           "one-vertex Z2 homology spheres: n=1 -> " + std::to_string(n1) + ", n=2 -> " + std::to_string(n2) +
               " (expected 2, 7) in " + fmt("%.2fs", t));
}

void colouring_averages() {
    auto start = Clock::now();
    const std::map<int, std::array<double, 3>> expected{{1, {2.50, 3.00, 4.00}}, {2, {4.00, 6.86, 8.86}}};
    bool ok = true;
    std::string detail;
    for (const auto &[n, want] : expected) {
        auto list = z2hs(n);
        for (int r = 5; r <= 7; ++r) {
            std::size_t total = 0;
            for (const auto &t : list)
                total += enumerate_admissible(build_skeleton(t), r).size();
            double mean = static_cast<double>(total) / static_cast<double>(list.size());
            ok = ok && std::abs(mean - want[static_cast<std::size_t>(r - 5)]) <= 0.005;
            detail += "n=" + std::to_string(n) + " r=" + std::to_string(r) + fmt(" %.4f; ", mean);
        }
    }
    double t = seconds_since(start);
    report(2, ok && t < 60, "mean |Adm|: " + detail + fmt("%.2fs", t));
}

void sharpness() {
    std::string detail;
    bool ok = true;
    for (auto [n, want] : {std::pair{1, 1}, std::pair{2, 3}}) {
        int sharp = 0;
        for (const auto &t : z2hs(n)) {
            auto s = build_skeleton(t);
            bool all = true;
            for (int r = 5; r <= 7; ++r)
                all = all && bounds(s, r).sharp_small_r();
            sharp += all ? 1 : 0;
        }
        ok = ok && sharp == want;
        detail += "n=" + std::to_string(n) + " -> " + std::to_string(sharp) + " ";
    }
    report(3, ok, "triangulations attaining all three small-r bounds: " + detail + "(expected 1, 3)");
}

void table_two_row() {
    auto list = enumerate_census(1, {false, false, 1});
    if (list.size() != 1) {
        report(4, false, "expected one n=1 triangulation with b1=1, found " + std::to_string(list.size()));
        return;
    }
    auto s = build_skeleton(list[0]);
    auto b = bounds(s, 4);
    auto structured = adm4_structured(s).colourings.size();
    bool ok = b.actual == 4 && structured == 4 && b.eqLong == 4u && b.eqShort == 4u && b.naive == 9 &&
              b.sharp_long() && b.sharp_short();
    report(4, ok,
           "|Adm(T,4)|=" + std::to_string(b.actual) + " structured=" + std::to_string(structured) +
               " long=" + std::to_string(b.eqLong.value_or(0)) + " short=" + std::to_string(b.eqShort.value_or(0)) +
               " naive=" + std::to_string(b.naive) + " tree nodes=" + std::to_string(b.nodes.nodesVisited));
}

void adm3_count() {
    auto inputs = corpus::closed_upto(2);
    const std::size_t exhaustive = inputs.size();
    auto three = corpus::closed(3);
    std::mt19937 rng(7);
    std::shuffle(three.begin(), three.end(), rng);
    const std::size_t sample = std::min<std::size_t>(100, three.size());
    inputs.insert(inputs.end(), three.begin(), three.begin() + static_cast<std::ptrdiff_t>(sample));
    int bad = 0;
    for (const auto &t : inputs) {
        auto s = build_skeleton(t);
        if (enumerate_admissible(s, 3).size() != std::size_t{1} << (s.v + betti_z2(s, 1) - 1))
            ++bad;
    }
    report(5, bad == 0,
           "|Adm(T,3)| = 2^(v+b1-1) on " + std::to_string(exhaustive) + " inputs with n<=2 and " +
               std::to_string(sample) + " of " + std::to_string(corpus::closed(3).size()) + " with n=3; " +
               std::to_string(bad) + " mismatches");
}

void loop_weight_equivalence() {
    auto start = Clock::now();
    long long checked = 0, bad = 0;
    for (int r = 3; r <= 9; ++r) {
        std::vector<std::pair<std::array<int, 6>, LoopDecomposition>> tets;
        std::array<int, 6> c{};
        std::function<void(std::size_t)> fill = [&](std::size_t k) {
            if (k == 6) {
                if (admissible_tet(r, c))
                    tets.emplace_back(c, decompose_symbol(IntersectionSymbol::from_colours(c)));
                return;
            }
            for (c[k] = 0; c[k] <= r - 2; ++c[k])
                fill(k + 1);
        };
        fill(0);
        for (int q : valid_q(r)) {
            FieldContext ctx(r, q);
            for (const auto &[colours, loops] : tets) {
                ++checked;
                if (tet_weight_loop(ctx, loops) != tetrahedron_weight(ctx, colours))
                    ++bad;
            }
        }
    }
    double t = seconds_since(start);
    report(6, bad == 0 && t < 300,
           "loop-coordinate weight equals 6j weight on " + std::to_string(checked) +
               " (symbol, r, q) cases, r=3..9; " + std::to_string(bad) + " mismatches in " + fmt("%.1fs", t));
}

void decomposition_oracle() {
    constexpr int kMax = 7;
    // Oracle: every loop system whose symbol has entries <= kMax, grouped by symbol.
    std::map<std::array<int, 6>, std::vector<LoopDecomposition>> oracle;
    auto add = [&](const LoopDecomposition &l) {
        auto f = flat(reconstruct(l));
        if (*std::max_element(f.begin(), f.end()) <= kMax)
            oracle[f].push_back(l);
    };
    for (int a = 0; a <= kMax; ++a)
        for (int b = 0; b <= kMax; ++b)
            for (int c = 0; c <= kMax; ++c)
                for (int d = 0; d <= kMax; ++d) {
                    add({a, b, c, d, 0, 0, 0, 0});
                    for (int p = 1; p <= kMax; ++p)
                        for (int i = 0; i * p <= kMax; ++i)
                            for (int j = 0; (i + j) * p <= kMax; ++j)
                                if (std::gcd(i, j) == 1)
                                    for (int rot = 0; rot < 3; ++rot)
                                        add({a, b, c, d, p, i, j, rot});
                }
    long long symbols = 0, bad = 0;
    IntersectionSymbol s;
    std::array<int, 6> e{};
    std::function<void(std::size_t)> walk = [&](std::size_t k) {
        if (k == 6) {
            s.m = {std::array<int, 3>{e[0], e[1], e[2]}, std::array<int, 3>{e[3], e[4], e[5]}};
            if (!s.balanced_faces())
                return;
            ++symbols;
            auto it = oracle.find(e);
            try {
                auto got = decompose_symbol(s);
                bool ok = it != oracle.end() && reconstruct(got) == s;
                if (ok)
                    for (const auto &l : it->second)
                        ok = ok && same_loops(l, got);
                bad += ok ? 0 : 1;
            } catch (const DecompositionError &) {
                ++bad;
            }
            return;
        }
        for (e[k] = 0; e[k] <= kMax; ++e[k])
            walk(k + 1);
    };
    walk(0);
    long long unbalanced = 0;
    for (const auto &[key, loops] : oracle) {
        IntersectionSymbol t;
        t.m = {std::array<int, 3>{key[0], key[1], key[2]}, std::array<int, 3>{key[3], key[4], key[5]}};
        unbalanced += t.balanced_faces() ? 0 : 1;
    }
    report(7, bad == 0 && unbalanced == 0,
           "decompose_symbol matches exhaustive loop search on " + std::to_string(symbols) +
               " admissible symbols with entries <= 7; " + std::to_string(bad) + " mismatches");
}

void algorithm_equivalence() {
    int inputs = 0, bad = 0;
    for (const auto &t : one_vertex_census()) {
        auto s = build_skeleton(t);
        ++inputs;
        for (int q : valid_q(4)) {
            FieldContext ctx(4, q);
            bad += tv4_structured(s, ctx).value == tv(s, ctx).value ? 0 : 1;
        }
        for (int r : {3, 5, 7}) {
            FieldContext ctx(r, 1);
            bad += tv_odd_fast(s, ctx).value == tv(s, ctx).value ? 0 : 1;
        }
    }
    report(8, bad == 0,
           "tv4_structured (all q) and tv_odd_fast (r=3,5,7) equal the naive sum on " + std::to_string(inputs) +
               " one-vertex inputs with n<=" + std::to_string(kMaxCensusTets) + "; " + std::to_string(bad) +
               " mismatches");
}

void class_factorisation() {
    int cases = 0, literal = 0, doubled = 0;
    for (const auto &t : one_vertex_census()) {
        auto s = build_skeleton(t);
        std::vector<int> zero(static_cast<std::size_t>(betti_z2(s, 1)), 0);
        for (int r : {5, 7}) {
            FieldContext ctx(r, 1);
            auto full = tv(s, ctx).value;
            auto trivial = tv_at_class(s, ctx, zero).value;
            auto factor = ctx.from_rational(tv3_rational(s));
            ++cases;
            literal += full == factor * trivial ? 1 : 0;
            doubled += full == ctx.from_integer(2) * factor * trivial ? 1 : 0;
        }
    }
    report(9, literal == cases,
           "tv(T,r) = tv(T,3) * tv_at_class(T,r,[0]) holds in " + std::to_string(literal) + " of " +
               std::to_string(cases) + " (input, r) cases, r=5,7");
    info("with a factor 2, tv(T,r) = 2 * tv(T,3) * tv_at_class(T,r,[0]) holds in " + std::to_string(doubled) + " of " +
         std::to_string(cases) + " cases");
}

void pachner() {
    int moves = 0, bad = 0;
    for (const auto &t : corpus::closed_upto(2)) {
        auto s = build_skeleton(t);
        for (int f = 0; f < s.f; ++f) {
            auto [tet, face] = s.triangleRep[static_cast<std::size_t>(f)];
            if (t.gluing(tet, face)->tet == tet)
                continue;
            auto moved = pachner_23(t, s, f);
            for (int r = 3; r <= 7; ++r) {
                FieldContext ctx(r, 1);
                bad += tv(moved, ctx).value == tv(t, ctx).value ? 0 : 1;
            }
            ++moves;
            break;
        }
    }
    report(10, moves >= 5 && bad == 0,
           "2-3 moves on " + std::to_string(moves) + " inputs, r=3..7: " + std::to_string(bad) + " mismatches");
}

void speed_up() {
    int cases = 0, bad = 0, spheres = 0;
    long long maxRatioNum = 0, maxRatioDen = 1;
    for (const auto &t : one_vertex_census()) {
        auto s = build_skeleton(t);
        bool sphere = corpus::z2_sphere(s);
        for (int r : {5, 7}) {
            EnumerationStats full, ints;
            enumerate_admissible(s, r, {}, &full);
            enumerate_admissible(s, r, {true, std::nullopt}, &ints);
            ++cases;
            if (ints.nodesVisited > full.nodesVisited)
                ++bad;
            if (static_cast<std::uint64_t>(full.admissibleCount) < ipow(static_cast<std::uint64_t>(r - 1), s.n + 1) &&
                ints.nodesVisited >= full.nodesVisited)
                ++bad;
            if (sphere) {
                ++spheres;
                auto bound = static_cast<long long>(ipow(static_cast<std::uint64_t>(r / 2), s.n + 1));
                if (ints.leavesVisited > bound)
                    ++bad;
                if (ints.nodesVisited * maxRatioDen > maxRatioNum * bound) {
                    maxRatioNum = ints.nodesVisited;
                    maxRatioDen = bound;
                }
            }
        }
    }
    report(11, bad == 0,
           "integer-only search never visits more nodes, strictly fewer when |Adm| < (r-1)^(n+1), and its leaves stay "
           "within floor(r/2)^(n+1) on spheres: " +
               std::to_string(cases) + " cases (" + std::to_string(spheres) + " on spheres); " + std::to_string(bad) +
               " violations");
    info("largest integer-only node count relative to floor(r/2)^(n+1) on spheres: " + std::to_string(maxRatioNum) +
         " / " + std::to_string(maxRatioDen));
}

void known_values() {
    bool ok = true;
    for (int r : {5, 7}) {
        FieldContext ctx(r, 1);
        ok = ok && tv(corpus::rp3(), ctx).value.is_zero();
    }
    FieldContext c4(4, 1);
    int spheres = 0;
    for (const auto &t : one_vertex_census()) {
        auto s = build_skeleton(t);
        if (!corpus::z2_sphere(s))
            continue;
        ++spheres;
        ok = ok && tv(s, c4).value == c4.from_rational(mpq_class(1, 4));
    }
    report(12, ok, "tv(RP3, r=5,7) = 0 and tv(T,4) = 1/4 on " + std::to_string(spheres) +
                       " one-vertex Z2 homology spheres");
}

} // namespace

int main() {
    auto start = Clock::now();
    guarded(1, census_counts);
    guarded(2, colouring_averages);
    guarded(3, sharpness);
    guarded(4, table_two_row);
    guarded(5, adm3_count);
    guarded(6, loop_weight_equivalence);
    guarded(7, decomposition_oracle);
    guarded(8, algorithm_equivalence);
    guarded(9, class_factorisation);
    guarded(10, pachner);
    guarded(11, speed_up);
    guarded(12, known_values);
    std::printf("%d of 12 criteria failed (%.1fs)\n", failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
