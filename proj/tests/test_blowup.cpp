#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "starcalc/blowup.hpp"
#include "starcalc/errors.hpp"

using starcalc::Arrangement;
using starcalc::Curve;
using starcalc::DivisorClass;
using starcalc::IntersectionPoint;
using starcalc::PointDeclaration;
using starcalc::curve_pair;

namespace {

DivisorClass cls(const char* text) { return DivisorClass::parse(text); }

// Two lines through p, a third line in general position.
Arrangement three_lines() {
    std::vector<Curve> curves{
        {"L1", cls("h"), {{"p", 1}, {"q", 1}}},
        {"L2", cls("h"), {{"p", 1}, {"r", 1}}},
        {"L3", cls("h"), {{"q", 1}, {"r", 1}}},
    };
    std::vector<IntersectionPoint> points{
        {"p", {{curve_pair("L1", "L2"), 1}}},
        {"q", {{curve_pair("L1", "L3"), 1}}},
        {"r", {{curve_pair("L2", "L3"), 1}}},
    };
    return Arrangement(curves, points);
}

// Oracle for the n-cycle test: some cyclic ordering has neighbours pairing to 1
// and non-neighbours to 0 (n = 2: the two pair to 2).
bool oracle_is_cycle(const std::vector<DivisorClass>& c) {
    const std::size_t n = c.size();
    for (const auto& x : c) {
        if (starcalc::self_intersection(x) != -2) return false;
    }
    if (n < 2) return false;
    if (n == 2) return starcalc::pairing(c[0], c[1]) == 2;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = i + 1; j < n && ok; ++j) {
                const std::size_t gap = j - i;
                const long want = (gap == 1 || gap == n - 1) ? 1 : 0;
                if (starcalc::pairing(c[order[i]], c[order[j]]) != want) ok = false;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return false;
}

}  // namespace

TEST(DivisorClass, ParseAndPrint) {
    EXPECT_EQ(cls("3h-2e1-e2-e4"), DivisorClass(3, {-2, -1, 0, -1}));
    EXPECT_EQ(cls("3h-2e1-e2-e4").to_string(), "3h-2e1-e2-e4");
    EXPECT_EQ(cls("0"), DivisorClass());
    EXPECT_EQ(cls("e3"), DivisorClass::exceptional(3));
    EXPECT_EQ(cls("-h+e2"), DivisorClass(-1, {0, 1}));
    EXPECT_EQ(DivisorClass(0, {0, 0}).to_string(), "0");
    EXPECT_THROW(cls("3x"), starcalc::BadParameter);
    EXPECT_THROW(cls("e0"), starcalc::BadParameter);
    EXPECT_THROW(cls(""), starcalc::BadParameter);
    EXPECT_THROW(DivisorClass::exceptional(0), starcalc::BadParameter);
}

TEST(DivisorClass, PairingExamples) {
    EXPECT_EQ(starcalc::self_intersection(cls("e1-e2")), -2);
    EXPECT_EQ(starcalc::pairing(cls("e1"), cls("e2")), 0);
    EXPECT_EQ(starcalc::pairing(cls("e1-e2"), cls("e2-e3")), 1);
    EXPECT_EQ(starcalc::pairing(cls("h"), cls("h")), 1);
    EXPECT_EQ(starcalc::self_intersection(cls("3h-2e1-e2-e4")), 3);
    EXPECT_EQ(starcalc::self_intersection(cls("3h-e1-e2-e3-e4-e5-e6-e7-e8-e9")), 0);
    EXPECT_EQ(starcalc::pairing(cls("h-e1-e2-e3"), cls("h-e4-e5-e6")), 1);
    // zero padding
    EXPECT_EQ(cls("h") + cls("e5") - cls("e5"), cls("h"));
}

TEST(Arrangement, ConsistentBeforeBlowUp) {
    const auto arr = three_lines();
    EXPECT_TRUE(arr.consistency_defects().empty());
    EXPECT_EQ(arr.intersection_multiplicity("L1", "L2"), 1);
    EXPECT_EQ(arr.incident_curves("p"), (std::vector<std::string>{"L1", "L2"}));
    EXPECT_THROW(arr.curve("L9"), starcalc::UnknownCurve);
    EXPECT_THROW(arr.point("z"), starcalc::UnknownPoint);
}

TEST(Arrangement, MissingPointIsADefect) {
    std::vector<Curve> curves{{"L1", cls("h"), {}}, {"L2", cls("h"), {}}};
    const Arrangement arr(curves, {});
    const auto defects = arr.consistency_defects();
    ASSERT_EQ(defects.size(), 1u);
    EXPECT_EQ(defects[0].class_pairing, 1);
    EXPECT_EQ(defects[0].located_multiplicity, 0);
}

TEST(Arrangement, RejectsBadDeclarations) {
    EXPECT_THROW(Arrangement({{"A", cls("h"), {}}, {"A", cls("h"), {}}}, {}), starcalc::InconsistentScript);
    EXPECT_THROW(Arrangement({{"A", cls("h"), {{"nowhere", 1}}}}, {}), starcalc::UnknownPoint);
    EXPECT_THROW(Arrangement({{"A", cls("h"), {{"p", 0}}}}, {{"p", {}}}), starcalc::InconsistentScript);
    // pair declared at a point one curve misses
    EXPECT_THROW(Arrangement({{"A", cls("h"), {{"p", 1}}}, {"B", cls("h"), {}}},
                             {{"p", {{curve_pair("A", "B"), 1}}}}),
                 starcalc::InconsistentScript);
    // multiplicity below product of local multiplicities
    EXPECT_THROW(Arrangement({{"A", cls("3h"), {{"p", 2}}}, {"B", cls("h"), {{"p", 1}}}},
                             {{"p", {{curve_pair("A", "B"), 1}}}}),
                 starcalc::InconsistentScript);
}

TEST(BlowUp, SeparatesTwoLines) {
    const auto arr = three_lines();
    const auto out = starcalc::blow_up(arr, "p",
                                       {PointDeclaration{"a", {{"L1", 1}}, {{curve_pair("L1", "e1"), 1}}},
                                        PointDeclaration{"b", {{"L2", 1}}, {{curve_pair("L2", "e1"), 1}}}});
    EXPECT_EQ(out.exceptional_count(), 1u);
    EXPECT_EQ(out.curve("L1").cls, cls("h-e1"));
    EXPECT_EQ(out.curve("L2").cls, cls("h-e1"));
    EXPECT_EQ(out.curve("L3").cls, cls("h"));
    EXPECT_EQ(out.curve("e1").cls, cls("e1"));
    EXPECT_EQ(starcalc::self_intersection(out.curve("L1").cls), 0);
    EXPECT_EQ(out.intersection_multiplicity("L1", "L2"), 0);
    EXPECT_EQ(out.intersection_multiplicity("L1", "e1"), 1);
    EXPECT_FALSE(out.has_point("p"));
    EXPECT_TRUE(out.consistency_defects().empty());
}

TEST(BlowUp, PointOnNoCurve) {
    const auto out = starcalc::blow_up(three_lines(), "p",
                                       {PointDeclaration{"a", {{"L1", 1}}, {{curve_pair("L1", "e1"), 1}}},
                                        PointDeclaration{"b", {{"L2", 1}}, {{curve_pair("L2", "e1"), 1}}},
                                        PointDeclaration{"c", {}, {}}});
    EXPECT_EQ(out.incident_curves("c"), (std::vector<std::string>{"e1"}));
    // a general point of the plane lies on nothing
    const Arrangement lone({{"L", cls("h"), {}}}, {{"x", {}}});
    const auto blown = starcalc::blow_up(lone, "x");
    EXPECT_EQ(blown.curve("L").cls, cls("h"));
    EXPECT_EQ(starcalc::self_intersection(blown.curve("e1").cls), -1);
}

TEST(BlowUp, TangencyLeavesResidual) {
    // conic and tangent line: multiplicity 2 at t, residual 1 after one blow-up
    const Arrangement arr({{"C", cls("2h"), {{"t", 1}}}, {"L", cls("h"), {{"t", 1}}}},
                          {{"t", {{curve_pair("C", "L"), 2}}}});
    EXPECT_EQ(starcalc::residual_multiplicities(arr, "t").at(curve_pair("C", "L")), 1);
    const auto out = starcalc::blow_up(
        arr, "t",
        {PointDeclaration{"t1", {{"C", 1}, {"L", 1}},
                          {{curve_pair("C", "L"), 1}, {curve_pair("C", "e1"), 1}, {curve_pair("L", "e1"), 1}}}});
    EXPECT_EQ(out.curve("C").cls, cls("2h-e1"));
    EXPECT_TRUE(out.consistency_defects().empty());
    // forgetting the residual is an error
    EXPECT_THROW(starcalc::blow_up(arr, "t",
                                   {PointDeclaration{"t1", {{"C", 1}, {"L", 1}},
                                                     {{curve_pair("C", "e1"), 1}, {curve_pair("L", "e1"), 1}}}}),
                 starcalc::InconsistentScript);
}

TEST(BlowUp, Errors) {
    const auto arr = three_lines();
    EXPECT_THROW(starcalc::blow_up(arr, "nowhere"), starcalc::UnknownPoint);
    EXPECT_THROW(starcalc::blow_up(arr, "p"), starcalc::InconsistentScript);
    // L3 does not pass through p
    EXPECT_THROW(starcalc::blow_up(arr, "p",
                                   {PointDeclaration{"a", {{"L1", 1}, {"L3", 1}}, {{curve_pair("L1", "e1"), 1}}},
                                    PointDeclaration{"b", {{"L2", 1}}, {{curve_pair("L2", "e1"), 1}}}}),
                 starcalc::InconsistentScript);
    // reusing an existing point name
    EXPECT_THROW(starcalc::blow_up(arr, "p",
                                   {PointDeclaration{"q", {{"L1", 1}}, {{curve_pair("L1", "e1"), 1}}},
                                    PointDeclaration{"b", {{"L2", 1}}, {{curve_pair("L2", "e1"), 1}}}}),
                 starcalc::InconsistentScript);
    const Arrangement taken({{"e1", cls("h"), {{"x", 1}}}}, {{"x", {}}});
    EXPECT_THROW(starcalc::blow_up(taken, "x"), starcalc::InconsistentScript);
}

TEST(Fiber, TriangleIsI3) {
    const Arrangement arr({{"A", cls("h-e1-e2-e3"), {}}, {"B", cls("h-e4-e5-e6"), {}}, {"C", cls("h-e7-e8-e9"), {}}},
                          {});
    const auto rep = starcalc::verify_fiber(arr, {"I3", {"A", "B", "C"}});
    EXPECT_TRUE(rep.pass) << (rep.problems.empty() ? "" : rep.problems.front());
    EXPECT_EQ(rep.total, cls("3h-e1-e2-e3-e4-e5-e6-e7-e8-e9"));
    EXPECT_EQ(rep.expected_n, 3);

    const auto wrong_n = starcalc::verify_fiber(arr, {"I4", {"A", "B", "C"}});
    EXPECT_FALSE(wrong_n.pass);
    EXPECT_THROW(starcalc::verify_fiber(arr, {"I3", {"A", "B", "Z"}}), starcalc::UnknownCurve);
    EXPECT_THROW(starcalc::verify_fiber(arr, {"II", {"A"}}), starcalc::BadParameter);
}

TEST(Fiber, SingleMinusTwoIsNotI1) {
    const Arrangement arr({{"A", cls("e1-e2"), {}}}, {});
    const auto rep = starcalc::verify_fiber(arr, {"I1", {"A"}});
    EXPECT_FALSE(rep.pass);
    EXPECT_FALSE(rep.problems.empty());
}

TEST(Fiber, I2NeedsPairingTwo) {
    const Arrangement arr({{"A", cls("h-e1-e2-e3"), {}},
                           {"B", cls("2h-e4-e5-e6-e7-e8-e9"), {}},
                           {"C", cls("e1-e2"), {}},
                           {"D", cls("e2-e3"), {}}},
                          {});
    EXPECT_TRUE(starcalc::verify_fiber(arr, {"I2", {"A", "B"}}).pass);
    EXPECT_FALSE(starcalc::verify_fiber(arr, {"I2", {"C", "D"}}).pass);
}

TEST(Fiber, ClassEquality) {
    const Arrangement arr({{"A", cls("h-e1-e2-e3"), {}},
                           {"B", cls("h-e4-e5-e6"), {}},
                           {"C", cls("h-e7-e8-e9"), {}},
                           {"D", cls("3h-e1-e2-e3-e4-e5-e6-e7-e8-e9"), {}}},
                          {});
    EXPECT_TRUE(starcalc::fiber_class_equal(arr, {"A", "B", "C"}, {"D"}));
    EXPECT_FALSE(starcalc::fiber_class_equal(arr, {"A", "B"}, {"D"}));
    EXPECT_EQ(starcalc::total_class(arr, {}), DivisorClass());
}

TEST(Fiber, TypeLabels) {
    EXPECT_EQ(starcalc::fiber_type_order("I6"), 6);
    EXPECT_EQ(starcalc::fiber_type_order("I12"), 12);
    EXPECT_THROW(starcalc::fiber_type_order("I0"), starcalc::BadParameter);
    EXPECT_THROW(starcalc::fiber_type_order("III"), starcalc::BadParameter);
    EXPECT_THROW(starcalc::fiber_type_order("I"), starcalc::BadParameter);
}

// ---- properties -----------------------------------------------------------

TEST(BlowUpProperty, PairingDropsByProductOfMultiplicities) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> coeff(-4, 4);
    std::uniform_int_distribution<long> mult(0, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t len = 1 + trial % 6;
        std::vector<long> ea(len), eb(len);
        for (auto& x : ea) x = coeff(rng);
        for (auto& x : eb) x = coeff(rng);
        const DivisorClass a(coeff(rng), ea), b(coeff(rng), eb);
        const std::size_t k = len + 1;
        const long ma = mult(rng), mb = mult(rng);
        const auto a2 = a - DivisorClass::exceptional(k, ma);
        const auto b2 = b - DivisorClass::exceptional(k, mb);
        EXPECT_EQ(starcalc::pairing(a2, b2), starcalc::pairing(a, b) - ma * mb);
        EXPECT_EQ(starcalc::self_intersection(a2), starcalc::self_intersection(a) - ma * ma);
        EXPECT_EQ(starcalc::pairing(a, b), starcalc::pairing(b, a));
    }
}

TEST(BlowUpProperty, ArrangementBlowUpMatchesClassFormula) {
    // k lines through one point; blowing it up separates all of them.
    for (int k = 1; k <= 6; ++k) {
        std::vector<Curve> curves;
        IntersectionPoint p{"p", {}};
        std::vector<PointDeclaration> then;
        for (int i = 0; i < k; ++i) {
            const std::string name = "L" + std::to_string(i);
            curves.push_back({name, cls("h"), {{"p", 1}}});
            for (int j = 0; j < i; ++j) p.pair_multiplicity[curve_pair("L" + std::to_string(j), name)] = 1;
            then.push_back({"x" + std::to_string(i), {{name, 1}}, {{curve_pair(name, "e1"), 1}}});
        }
        const Arrangement arr(curves, {p});
        const auto out = starcalc::blow_up(arr, "p", then);
        for (int i = 0; i < k; ++i) {
            const auto& c = out.curve("L" + std::to_string(i)).cls;
            EXPECT_EQ(starcalc::self_intersection(c), 0);
            for (int j = 0; j < i; ++j) {
                EXPECT_EQ(starcalc::pairing(c, out.curve("L" + std::to_string(j)).cls), 0);
            }
        }
        EXPECT_TRUE(out.consistency_defects().empty()) << k;
    }
}

TEST(FiberProperty, VerifierAgreesWithPermutationOracle) {
    std::vector<DivisorClass> pool;
    for (std::size_t i = 1; i <= 5; ++i) {
        for (std::size_t j = 1; j <= 5; ++j) {
            if (i != j) pool.push_back(DivisorClass::exceptional(i) - DivisorClass::exceptional(j));
        }
    }
    for (std::size_t a = 1; a <= 6; ++a) {
        for (std::size_t b = a + 1; b <= 6; ++b) {
            for (std::size_t c = b + 1; c <= 6; ++c) {
                pool.push_back(DivisorClass::line() - DivisorClass::exceptional(a) - DivisorClass::exceptional(b) -
                               DivisorClass::exceptional(c));
            }
        }
    }
    pool.push_back(cls("2h-e1-e2-e3-e4-e5-e6"));
    pool.push_back(cls("h-e1"));

    std::mt19937 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int passes = 0;
    auto check = [&](const std::vector<DivisorClass>& chosen) {
        std::vector<Curve> curves;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            names.push_back("C" + std::to_string(i));
            curves.push_back({names.back(), chosen[i], {}});
        }
        const Arrangement arr(curves, {});
        const std::string label = "I" + std::to_string(chosen.size());
        const bool got = starcalc::verify_fiber(arr, {label, names}).pass;
        const bool distinct = std::all_of(chosen.begin(), chosen.end(), [&](const DivisorClass& x) {
            return std::count(chosen.begin(), chosen.end(), x) == 1;
        });
        const bool want = oracle_is_cycle(chosen);
        EXPECT_EQ(got, want && distinct);
        passes += got ? 1 : 0;
    };
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<DivisorClass> chosen(2 + trial % 5);
        for (auto& c : chosen) c = pool[pick(rng)];
        check(chosen);
    }
    // planted cycles e1-e2, e2-e3, ..., e_n-e1, shuffled
    for (std::size_t n = 3; n <= 5; ++n) {
        std::vector<DivisorClass> cyc;
        for (std::size_t i = 1; i <= n; ++i) {
            cyc.push_back(DivisorClass::exceptional(i) - DivisorClass::exceptional(i % n + 1));
        }
        for (int k = 0; k < 10; ++k) {
            std::shuffle(cyc.begin(), cyc.end(), rng);
            check(cyc);
        }
    }
    EXPECT_GT(passes, 0);
}
