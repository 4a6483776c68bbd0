#include "doctest.h"
#include "twistlab/descent.hpp"
#include "twistlab/parity.hpp"

using namespace twistlab;

namespace {
const Curve E0 = make_curve({0, -1, 1, 0, 0});
const Curve V = make_curve({0, 0, 0, -1, 0});

PlaceDescriptor desc(PlaceKind k, long p, LocalReduction r, Tri flag, bool ramified = false, unsigned ord = 0) {
    PlaceDescriptor d;
    d.kind = k;
    d.p = p;
    d.reduction = r;
    d.deltaParityFlag = flag;
    d.ramified = ramified;
    d.ordDelta = ord;
    return d;
}
}  // namespace

TEST_CASE("kramer parity") {
    CHECK(kramer_parity(E0, 1).flipBit == 0);
    CHECK(kramer_parity(V, 1).flipBit == 0);
    const auto v17 = kramer_parity(V, 17, 2);
    CHECK(v17.flipBit == 0);
    CHECK(v17.predictedParity == 0);
    const auto e7 = kramer_parity(E0, -7);
    CHECK(e7.flipBit == 1);
    int d11 = -1, d7 = -1;
    for (const auto& e : e7.perPlace.entries) {
        if (e.place == Place::finite(11)) d11 = *e.delta;
        if (e.place == Place::finite(7)) d7 = *e.delta;
    }
    CHECK(d11 + d7 == 1);
    CHECK_THROWS_AS(kramer_parity(V, 3), Error);
}

TEST_CASE("kramer parity is symmetric under the twist") {
    int checked = 0;
    for (long d = -300; d <= 300; ++d) {
        if (d == 0 || !is_squarefree(Integer(d))) continue;
        for (const Curve* E : {&E0, &V}) {
            try {
                const int a = kramer_parity(*E, d).flipBit;
                const int b = kramer_parity(twist(*E, d), d).flipBit;
                CHECK(a == b);
                ++checked;
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::UnsupportedPlace);
            }
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("selmer envelope") {
    const auto t0 = envelope_from_t(0, 3, std::nullopt);
    CHECK(t0.exact == 3);
    CHECK(t0.possible == std::vector<int>{3});
    CHECK(envelope_from_t(1, 2, 0).exact == 3);
    CHECK(envelope_from_t(2, 2, std::nullopt).possible == std::vector<int>{0, 2, 4});
    CHECK(envelope_from_t(1, 2, std::nullopt).possible == std::vector<int>{1, 3});
    const auto e = selmer_envelope(E0, 17, 1);
    CHECK(e.t == static_cast<int>(e.T.size()) * 0 + e.t);
    CHECK_THROWS_AS(selmer_envelope(E0, 3, 1), Error);
    const auto v = selmer_envelope(V, 17, 2);
    CHECK(v.t == 2);
    CHECK(v.possible == std::vector<int>{0, 2, 4});
    for (int t = 0; t <= 4; ++t)
        for (int d2 = 0; d2 <= 4; ++d2) {
            const auto env = envelope_from_t(t, d2, std::nullopt);
            for (int x : env.possible) {
                CHECK(x >= 0);
                CHECK((x - d2 - t) % 2 == 0);
                CHECK(x <= d2 + t);
            }
        }
}

TEST_CASE("root numbers") {
    const auto w = root_number(E0);
    CHECK(w.global == 1);
    CHECK(w.local.front().first == Place::real());
    CHECK(w.local.front().second == -1);
    CHECK_THROWS_AS(root_number(V), Error);
    CHECK_THROWS_AS(root_number(make_curve({0, 0, 0, 0, 3})), Error);
    // w(E^D) = kronecker(D, -N) w(E) for fundamental D coprime to N = 11.
    int checked = 0;
    for (long D = -400; D <= 400; ++D) {
        if (D % 4 != 1 && D % 4 != -3) continue;
        if (D == 1 || !is_squarefree(Integer(D)) || D % 3 == 0 || D % 11 == 0) continue;
        CHECK(root_number(twist(E0, D)).global == kronecker(Integer(D), Integer(-11)));
        ++checked;
    }
    CHECK(checked > 100);
    CHECK(parity_crosscheck(E0, 2));
    CHECK_FALSE(parity_crosscheck(E0, 3));
}

TEST_CASE("constant parity classifier") {
    const auto real = desc(PlaceKind::Real, 0, LocalReduction::Good, Tri::No);
    const auto cplx = desc(PlaceKind::Complex, 0, LocalReduction::Good, Tri::Yes);
    const auto add = desc(PlaceKind::Finite, 5, LocalReduction::Additive, Tri::Yes, false, 2);
    const auto mult = desc(PlaceKind::Finite, 7, LocalReduction::MultSplit, Tri::No, false, 1);
    const auto good = desc(PlaceKind::Finite, 7, LocalReduction::Good, Tri::Yes);

    auto v = classify_constant_parity({cplx, add, real});
    CHECK_FALSE(v.constant);
    CHECK(v.witness == 2u);
    v = classify_constant_parity({cplx, mult});
    CHECK_FALSE(v.constant);
    CHECK(v.witness == 1u);
    CHECK(classify_constant_parity({cplx, add, add, good}).constant);
    CHECK_THROWS_AS(classify_constant_parity({cplx, desc(PlaceKind::Finite, 5, LocalReduction::Additive, Tri::Unknown)}),
                    Error);
    CHECK_THROWS_AS(classify_constant_parity({desc(PlaceKind::Finite, 7, LocalReduction::Good, Tri::No)}), Error);
    const auto add_no = desc(PlaceKind::Finite, 5, LocalReduction::Additive, Tri::No, false, 2);
    CHECK_FALSE(classify_constant_parity({cplx, add, add_no}).constant);
}

TEST_CASE("parity flip witness") {
    const auto d = parity_flip_witness(E0, 10000);
    REQUIRE(d.has_value());
    CHECK(kramer_parity(E0, *d).flipBit == 1);
    CHECK(root_number(twist(E0, *d)).global == -root_number(E0).global);

    const auto dv = parity_flip_witness(V, 10000);
    REQUIRE(dv.has_value());
    const FullTorsionCurve F(0, 1, -1);
    CHECK((sel2(F.twist(*dv)).dim - sel2(F).dim) % 2 != 0);
    CHECK_FALSE(parity_flip_witness(E0, 0).has_value());
}
