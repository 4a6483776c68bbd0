#include "doctest.h"
#include "oracles.hpp"
#include "twistlab/curve.hpp"
#include "twistlab/localdata.hpp"

using namespace twistlab;

namespace {
const Curve E0 = make_curve({0, -1, 1, 0, 0});
const Curve V = make_curve({0, 0, 0, -1, 0});
}  // namespace

TEST_CASE("splitting and conductor") {
    CHECK(splitting(5, Place::real()) == Splitting::Split);
    CHECK(splitting(-5, Place::real()) == Splitting::Ramified);
    CHECK(splitting(17, Place::finite(2)) == Splitting::Split);
    CHECK(splitting(5, Place::finite(2)) == Splitting::Inert);
    CHECK(splitting(3, Place::finite(2)) == Splitting::Ramified);
    CHECK(splitting(2, Place::finite(2)) == Splitting::Ramified);
    CHECK(splitting(2, Place::finite(7)) == Splitting::Split);
    CHECK(splitting(3, Place::finite(7)) == Splitting::Inert);
    CHECK(splitting(21, Place::finite(7)) == Splitting::Ramified);
    CHECK(twist_conductor(5) == 5);
    CHECK(twist_conductor(-3) == 3);
    CHECK(twist_conductor(3) == 12);
    CHECK(twist_conductor(-6) == 24);
}

TEST_CASE("h1f_dim") {
    CHECK(h1f_dim(E0, Place::finite(3)) == 0);
    CHECK(h1f_dim(V, Place::finite(17)) == 2);
    CHECK(h1f_dim(E0, Place::real()) == 0);
    CHECK(h1f_dim(V, Place::real()) == 1);
    CHECK(h1f_dim(V, Place::finite(2)) == 3);
    CHECK(h1f_dim(E0, Place::finite(2)) == 1);
}

TEST_CASE("delta_v examples") {
    CHECK(delta_v(E0, 3, Place::finite(3)).value == 0);
    CHECK(delta_v(E0, 7, Place::finite(7)).value == 1);
    CHECK(delta_v(V, 17, Place::finite(17)).value == 2);
    CHECK(delta_v(E0, -7, Place::real()).value == 0);
    CHECK(delta_v(V, -1, Place::real()).value == 1);
    CHECK(delta_v(V, -1, Place::real()).rule == "real-ramified");
    CHECK_FALSE(delta_v(V, 3, Place::finite(2)).value.has_value());
    CHECK(delta_v(E0, 7, Place::finite(11)).rule == "mult-inert-odd");
    CHECK(delta_v(E0, 3, Place::finite(11)).rule == "split");
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        CHECK(delta_v(E0, 1, Place::finite(p)).value == 0);
        CHECK(delta_v(V, 1, Place::finite(p)).value == 0);
    }
    CHECK(delta_v(V, 1, Place::real()).value == 0);
}

TEST_CASE("good ramified rule agrees with the Hilbert symbol of the discriminant") {
    const std::vector<Curve> curves{E0,
                                    make_curve({0, 0, 1, -1, 0}),
                                    make_curve({0, 1, 1, 0, 0}),
                                    make_curve({1, 1, 1, 0, 1}),
                                    make_curve({0, 0, 1, 1, 0}),
                                    make_curve({0, -1, 1, -1, 0}),
                                    make_curve({1, 0, 0, 1, 1}),
                                    make_curve({0, 0, 0, 2, 3}),
                                    make_curve({0, 1, 0, 3, 1}),
                                    make_curve({0, 0, 0, -3, 5}),
                                    make_curve({1, -1, 1, 2, 7}),
                                    make_curve({0, 0, 1, 4, -3}),
                                    make_curve({0, 2, 0, 1, 5}),
                                    make_curve({0, 0, 0, 5, -2}),
                                    make_curve({1, 1, 0, -3, 4}),
                                    make_curve({0, -1, 0, 7, 3}),
                                    make_curve({0, 0, 1, -2, 9}),
                                    make_curve({1, 0, 1, 6, 2}),
                                    make_curve({0, 1, 1, -5, 4}),
                                    make_curve({0, 0, 0, 11, 1})};
    int s3 = 0;
    for (const auto& E : curves) {
        const Curve M = minimal_model(E);
        if (two_division(M).galoisType != GaloisType::S3) continue;
        ++s3;
        for (long p = 3; p < 1000; ++p) {
            if (!oracle::is_prime(p) || M.disc % p == 0) continue;
            for (long d : {p, -p, 2 * p, -3 * p}) {
                if (!is_squarefree(Integer(d))) continue;
                const auto dv = delta_v(M, d, Place::finite(p));
                REQUIRE(dv.value.has_value());
                if (local_two_torsion_dim(M, Place::finite(p)) <= 1)
                    CHECK((*dv.value == 1) == (hilbert(Rational(M.disc), Rational(d), Place::finite(p)) == -1));
            }
        }
    }
    CHECK(s3 >= 15);
}

TEST_CASE("admissibility") {
    CHECK(admissible(E0, 17).admissible);
    CHECK(admissible(E0, 17).T.empty() == (local_two_torsion_dim(E0, Place::finite(17)) == 0));
    CHECK(admissible(E0, 41).admissible);
    const auto bad = admissible(E0, 3);
    CHECK_FALSE(bad.admissible);
    CHECK_FALSE(bad.reason.empty());
    const auto v17 = admissible(V, 17);
    CHECK(v17.admissible);
    CHECK(v17.T == std::vector<Integer>{17});
    CHECK_FALSE(admissible(E0, 11 * 17 * 3).admissible);

    // For admissible d, delta vanishes off T and equals dim E(Q_p)[2] on T.
    for (long d = -3000; d <= 3000; ++d) {
        if (d == 0 || !is_squarefree(Integer(d))) continue;
        for (const Curve* E : {&E0, &V}) {
            const auto a = admissible(*E, d);
            if (!a.admissible) continue;
            const auto report = norm_index_report(*E, d);
            for (const auto& entry : report.entries) {
                REQUIRE(entry.delta.has_value());
                const bool inT = entry.place.is_finite() &&
                                 std::find(a.T.begin(), a.T.end(), entry.place.prime()) != a.T.end();
                if (inT) CHECK(*entry.delta == local_two_torsion_dim(*E, entry.place));
                else CHECK(*entry.delta == 0);
            }
        }
    }
}

TEST_CASE("d_parity") {
    PlaceDescriptor good{PlaceKind::Finite, 7, false, LocalReduction::Good, 0, Tri::Unknown};
    CHECK(d_parity(good) == Tri::Yes);
    PlaceDescriptor mult{PlaceKind::Finite, 5, true, LocalReduction::MultSplit, 3, Tri::Unknown};
    CHECK(d_parity(mult) == Tri::No);
    PlaceDescriptor real{PlaceKind::Real, 0, false, LocalReduction::Good, 0, Tri::Unknown};
    CHECK(d_parity(real) == Tri::No);
    PlaceDescriptor add{PlaceKind::Finite, 5, false, LocalReduction::Additive, 2, Tri::Unknown};
    CHECK(d_parity(add) == Tri::Unknown);
    PlaceDescriptor two{PlaceKind::Finite, 2, false, LocalReduction::Good, 0, Tri::Unknown};
    CHECK(d_parity(two) == Tri::Unknown);
}
