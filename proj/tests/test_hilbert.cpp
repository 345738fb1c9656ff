#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "cqed/constants.hpp"
#include "cqed/hilbert.hpp"

using namespace cqed;

TEST_CASE("rng: identical seeds reproduce the sequence, substreams differ") {
    RngStream a(42), b(42), c(43);
    for (int k = 0; k < 100; ++k) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(RngStream(42).next_u64() != c.next_u64());
    CHECK(RngStream::substream(42, 0).next_u64() != RngStream::substream(42, 1).next_u64());
    // substream derivation must not depend on how many streams exist
    CHECK(RngStream::substream(42, 5).next_u64() == RngStream::substream(42, 5).next_u64());
}

TEST_CASE("rng: exponential waiting times") {
    RngStream rng(7);
    CHECK(std::isinf(RngStream(7).exponential(0.0)));
    double total = 0.0;
    const int draws = 20000;
    for (int k = 0; k < draws; ++k) total += rng.exponential(2.0);
    CHECK(total / draws == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("basis states put unit amplitude in the right slot") {
    const JointState e0 = make_basis_state(AtomLevel::e, 0, 3);
    CHECK(e0.amp(AtomLevel::e, 0) == Complex(1.0, 0.0));
    CHECK(e0.squared_norm() == doctest::Approx(1.0).epsilon(1e-14));

    const JointState g1 = make_basis_state(AtomLevel::g, 1, 3);
    CHECK(g1.amp(AtomLevel::g, 1) == Complex(1.0, 0.0));
    CHECK(fidelity(e0, g1) == 0.0);

    CHECK_THROWS_AS(make_basis_state(AtomLevel::i, 5, 3), TruncationError);
}

TEST_CASE("superpose builds Bell-like pairs and rejects cancellations") {
    const JointState e0 = make_basis_state(AtomLevel::e, 0, 3);
    const JointState g1 = make_basis_state(AtomLevel::g, 1, 3);

    const JointState bell = superpose({{e0, 1.0}, {g1, 1.0}});
    CHECK(std::abs(bell.amp(AtomLevel::e, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(bell.amp(AtomLevel::g, 1) - 1.0 / std::sqrt(2.0)) < 1e-15);

    const JointState single = superpose({{e0, 1.0}});
    CHECK(fidelity(single, e0) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(superpose({{e0, 1.0}, {e0, -1.0}}), DomainError);
    const JointState other_space = make_basis_state(AtomLevel::e, 0, 4);
    CHECK_THROWS_AS(superpose({{e0, 1.0}, {other_space, 1.0}}), DimensionError);
}

TEST_CASE("coherent states: amplitudes, recurrence, truncation policing") {
    const CoherentField vac = coherent_field(0.0, 4);
    CHECK(vac.amps[0] == Complex(1.0, 0.0));
    CHECK(vac.amps.tail(4).cwiseAbs().maxCoeff() == 0.0);

    const CoherentField one = coherent_field(1.0, 20);
    CHECK(std::abs(one.amps[0]) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(std::abs(one.amps[0]) == doctest::Approx(0.606531).epsilon(1e-6));

    // closed form against the recurrence-built values
    double factorial = 1.0;
    for (int n = 0; n <= 20; ++n) {
        if (n > 0) factorial *= n;
        const double expected = std::exp(-0.5) / std::sqrt(factorial);
        CHECK(std::abs(one.amps[n]) == doctest::Approx(expected).epsilon(1e-13));
    }

    CHECK_THROWS_AS(coherent_field(0.3, 1), TruncationError);
    CHECK(coherent_n_max_for(0.3) >= 2);
    CHECK_NOTHROW(coherent_field(0.3, coherent_n_max_for(0.3)));
}

TEST_CASE("fidelity: identity, orthogonality, coherent overlap, phase blindness") {
    const JointState e0 = make_basis_state(AtomLevel::e, 0, 3);
    const JointState g1 = make_basis_state(AtomLevel::g, 1, 3);
    CHECK(fidelity(e0, e0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(e0, g1) == 0.0);

    const CoherentField plus = coherent_field(1.0, 25);
    const CoherentField minus = coherent_field(-1.0, 25);
    CHECK(fidelity(plus, minus) == doctest::Approx(std::exp(-4.0)).epsilon(1e-9));

    JointState phased = g1;
    phased.amps *= std::polar(1.0, 2.13);
    CHECK(fidelity(g1, phased) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fidelity(phased, g1) == doctest::Approx(fidelity(g1, phased)).epsilon(1e-14));

    CHECK_THROWS_AS(fidelity(e0, make_basis_state(AtomLevel::e, 0, 5)), DimensionError);
}

TEST_CASE("measurement collapses the field and follows the Born rule") {
    const JointState bell = superpose({{make_basis_state(AtomLevel::e, 0, 3), 1.0},
                                       {make_basis_state(AtomLevel::g, 1, 3), 1.0}});
    RngStream rng(11);
    bool saw_e = false, saw_g = false;
    for (int k = 0; k < 64; ++k) {
        const MeasurementResult m = measure_atom(bell, rng);
        CHECK(m.probability == doctest::Approx(0.5).epsilon(1e-12));
        if (m.outcome == AtomLevel::e) {
            saw_e = true;
            CHECK(std::abs(m.state.amp(AtomLevel::e, 0)) == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            saw_g = true;
            CHECK(m.outcome == AtomLevel::g);
            CHECK(std::abs(m.state.amp(AtomLevel::g, 1)) == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(m.state.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(saw_e);
    CHECK(saw_g);

    const JointState pure = make_basis_state(AtomLevel::g, 1, 3);
    const MeasurementResult m = measure_atom(pure, rng);
    CHECK(m.outcome == AtomLevel::g);
    CHECK(m.probability == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("measurement frequencies converge to squared amplitudes") {
    const JointState state = superpose({{make_basis_state(AtomLevel::e, 0, 2), std::sqrt(0.25)},
                                        {make_basis_state(AtomLevel::g, 0, 2), std::sqrt(0.75)}});
    RngStream rng(20140601);
    const int draws = 100000;
    int hits = 0;
    for (int k = 0; k < draws; ++k) {
        if (measure_atom(state, rng).outcome == AtomLevel::e) ++hits;
    }
    const double freq = static_cast<double>(hits) / draws;
    const double sigma = std::sqrt(0.25 * 0.75 / draws);
    CHECK(std::abs(freq - 0.25) < 3.0 * sigma);

    // chi-square over the two bins
    const double expected_e = 0.25 * draws, expected_g = 0.75 * draws;
    const double chi2 = (hits - expected_e) * (hits - expected_e) / expected_e +
                        (draws - hits - expected_g) * (draws - hits - expected_g) / expected_g;
    CHECK(chi2 < 9.0);  // 3-sigma-ish for one degree of freedom
}

TEST_CASE("conditional field extraction and photon distribution") {
    const JointState bell = superpose({{make_basis_state(AtomLevel::e, 0, 3), 1.0},
                                       {make_basis_state(AtomLevel::g, 1, 3), 1.0}});
    const FieldState given_g = conditional_field(bell, AtomLevel::g);
    CHECK(std::abs(given_g.amps[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(conditional_field(bell, AtomLevel::i), DomainError);

    const auto dist = photon_distribution(bell);
    CHECK(dist[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist[1] == doctest::Approx(0.5).epsilon(1e-12));

    const JointState joint = make_joint(AtomLevel::i, FieldState::fock(2, 3));
    CHECK(joint.amp(AtomLevel::i, 2) == Complex(1.0, 0.0));
}
