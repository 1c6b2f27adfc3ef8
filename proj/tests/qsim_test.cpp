// Copyright 2026 The semiq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>

#include "semiq/qsim.hpp"
#include "support/dense_oracle.hpp"

using namespace semiq;
using namespace semiq::qsim;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

void expect_amps(const StateVector &s, const std::vector<Amplitude> &want, double tol = 1e-12) {
    const auto got = s.amplitudes();
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_NEAR(std::abs(got[i] - want[i]), 0.0, tol) << "index " << i;
    }
}

oracle::Dense to_oracle(const StateVector &s) {
    oracle::Dense d;
    for (const auto &l : s.labels()) {
        d.labels.push_back(l.str());
    }
    const auto a = s.amplitudes();
    d.amps.assign(a.begin(), a.end());
    return d;
}

StateVector random_state(const std::vector<QubitLabel> &labels, RandomSource &rng) {
    std::vector<Amplitude> a(std::size_t{1} << labels.size());
    double norm = 0;
    for (auto &x : a) {
        x = {rng.uniform() - 0.5, rng.uniform() - 0.5};
        norm += std::norm(x);
    }
    for (auto &x : a) {
        x /= std::sqrt(norm);
    }
    return StateVector(labels, a);
}

/// Overlap |<a|b>| between a library state and an oracle state with the
/// same label order.
double overlap(const StateVector &s, const oracle::Dense &d) {
    const auto a = s.amplitudes();
    Amplitude dot = 0;
    double nd = d.norm2();
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += std::conj(a[i]) * d.amps[i];
    }
    return std::abs(dot) / std::sqrt(nd);
}

double chi_square_critical(int df) {
    boost::math::chi_squared dist(df);
    return boost::math::quantile(boost::math::complement(dist, 0.001));
}

}  // namespace

TEST(PrepareBell, PsiPlusAmplitudes) {
    expect_amps(prepare_bell(BellKind::PsiPlus), {kS, 0, 0, kS});
}

TEST(PrepareBell, PhiMinusAmplitudes) {
    expect_amps(prepare_bell(BellKind::PhiMinus), {0, kS, -kS, 0});
}

TEST(PrepareBell, MatchesReferenceVectorsAndIsNormalized) {
    const auto ref = oracle::bell_vectors();
    for (std::size_t k = 0; k < 4; ++k) {
        const auto s = prepare_bell(kAllBellKinds[k]);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
        expect_amps(s, {ref[k].begin(), ref[k].end()});
    }
}

TEST(BellKind, ParityAndNames) {
    EXPECT_EQ(bell_parity(BellKind::PsiPlus), 0);
    EXPECT_EQ(bell_parity(BellKind::PsiMinus), 0);
    EXPECT_EQ(bell_parity(BellKind::PhiPlus), 1);
    EXPECT_EQ(bell_parity(BellKind::PhiMinus), 1);
    for (BellKind k : kAllBellKinds) {
        EXPECT_EQ(bell_from_string(to_string(k)), k);
        EXPECT_EQ(bell_from(bell_parity(k), bell_sign(k)), k);
    }
}

TEST(PrepareGhzLike, PsiPlusPhiPlusComputational) {
    const auto s = prepare_ghz_like(BellKind::PsiPlus, BellKind::PhiPlus, OrthonormalPair::computational());
    // 000, 011, 101, 110
    expect_amps(s, {0.5, 0, 0, 0.5, 0, 0.5, 0.5, 0});
}

TEST(PrepareGhzLike, MatchesTensorExpansionForAllPairsAndBases) {
    const auto ref = oracle::bell_vectors();
    const Amplitude i1{0, 1};
    std::vector<OrthonormalPair> bases{
        OrthonormalPair::computational(),
        {{kS, kS}, {kS, -kS}},
        {{kS, i1 * kS}, {kS, -i1 * kS}},
    };
    for (const auto &basis : bases) {
        for (std::size_t a = 0; a < 4; ++a) {
            for (std::size_t b = 0; b < 4; ++b) {
                if (a == b) {
                    continue;
                }
                const auto s = prepare_ghz_like(kAllBellKinds[a], kAllBellKinds[b], basis);
                oracle::Dense p1{{"x", "y"}, ref[a]}, p2{{"x", "y"}, ref[b]};
                oracle::Dense qa{{"z"}, {basis.a[0], basis.a[1]}}, qb{{"z"}, {basis.b[0], basis.b[1]}};
                auto t1 = oracle::kron(p1, qa), t2 = oracle::kron(p2, qb);
                std::vector<Amplitude> want(8);
                for (std::size_t i = 0; i < 8; ++i) {
                    want[i] = (t1.amps[i] + t2.amps[i]) * kS;
                }
                expect_amps(s, want);
                EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
            }
        }
    }
}

TEST(PrepareGhzLike, RejectsEqualKindsAndBadBasis) {
    for (BellKind k : kAllBellKinds) {
        try {
            prepare_ghz_like(k, k, OrthonormalPair::computational());
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::EqualBellKinds);
        }
    }
    OrthonormalPair bad{{1, 0}, {kS, kS}};
    try {
        prepare_ghz_like(BellKind::PsiPlus, BellKind::PhiPlus, bad);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NonOrthonormalBasis);
    }
}

TEST(PrepareGhzLike, ControllerThenBellGivesBranch) {
    RandomSource rng(5);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            if (a == b) {
                continue;
            }
            for (int rep = 0; rep < 20; ++rep) {
                auto s = prepare_ghz_like(kAllBellKinds[a], kAllBellKinds[b], OrthonormalPair::computational(), "p",
                                          "q", "c");
                auto m = measure_ab(s, "c", OrthonormalPair::computational(), rng);
                EXPECT_NEAR(m.probability, 0.5, 1e-12);
                auto bell = measure_bell(*m.post_state, "p", "q", rng);
                const auto want = std::get<AbOutcome>(m.outcome) == AbOutcome::A ? kAllBellKinds[a] : kAllBellKinds[b];
                EXPECT_EQ(std::get<BellKind>(bell.outcome), want);
                EXPECT_NEAR(bell.probability, 1.0, 1e-12);
            }
        }
    }
}

TEST(PrepareZ, BasisStates) {
    expect_amps(prepare_z(0), {1, 0});
    expect_amps(prepare_z(1), {0, 1});
    RandomSource rng(1);
    for (Bit b : {0, 1}) {
        auto r = measure_z(prepare_z(b), "q0", rng);
        EXPECT_EQ(std::get<Bit>(r.outcome), b);
        EXPECT_NEAR(r.probability, 1.0, 1e-15);
        EXPECT_FALSE(r.post_state.has_value());
    }
}

TEST(ApplyCnot, PsiPlusWithAncillaGivesGhz) {
    auto s = merge_registers(prepare_bell(BellKind::PsiPlus, "a", "b"), prepare_z(0, "e"));
    s = apply_cnot(s, "b", "e");
    expect_amps(s, {kS, 0, 0, 0, 0, 0, 0, kS});
}

TEST(ApplyCnot, InvolutionAndBasisAction) {
    RandomSource rng(2);
    auto s = random_state({"a", "b", "c"}, rng);
    auto twice = apply_cnot(apply_cnot(s, "a", "c"), "a", "c");
    expect_amps(twice, s.amplitudes());
    auto ten = merge_registers(prepare_z(1, "a"), prepare_z(0, "b"));
    expect_amps(apply_cnot(ten, "a", "b"), {0, 0, 0, 1});
}

TEST(ApplyCnot, UnknownLabel) {
    try {
        apply_cnot(prepare_bell(BellKind::PsiPlus), "q0", "nope");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownLabel);
    }
}

TEST(ApplyCnot, MatchesOracleOnRandomStates) {
    RandomSource rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        auto s = random_state({"a", "b", "c", "d"}, rng);
        auto d = to_oracle(s);
        s = apply_cnot(s, "d", "b");
        oracle::cnot(d, "d", "b");
        expect_amps(s, d.amps);
    }
}

TEST(MeasureZ, PsiPlusHalvesAndPartnerCollapse) {
    RandomSource rng(4);
    int ones = 0;
    for (int rep = 0; rep < 200; ++rep) {
        auto r = measure_z(prepare_bell(BellKind::PsiPlus), "q0", rng);
        const Bit b = std::get<Bit>(r.outcome);
        ones += b;
        EXPECT_NEAR(r.probability, 0.5, 1e-12);
        ASSERT_TRUE(r.post_state.has_value());
        expect_amps(*r.post_state, b ? std::vector<Amplitude>{0, 1} : std::vector<Amplitude>{1, 0});
        auto second = measure_z(*r.post_state, "q1", rng);
        EXPECT_EQ(std::get<Bit>(second.outcome), b);
    }
    EXPECT_GT(ones, 50);
    EXPECT_LT(ones, 150);
}

TEST(MeasureZ, ProbabilityAndPostStateMatchOracle) {
    RandomSource rng(6);
    for (int rep = 0; rep < 100; ++rep) {
        auto s = random_state({"a", "b", "c"}, rng);
        auto d = to_oracle(s);
        auto r = measure_z(s, "b", rng);
        const Bit b = std::get<Bit>(r.outcome);
        EXPECT_NEAR(r.probability, oracle::prob_z(d, "b", b), 1e-12);
        // Post state = normalized projection with b removed.
        oracle::Dense rest{{"a", "c"}, std::vector<Amplitude>(4)};
        for (std::size_t i = 0; i < 8; ++i) {
            if (d.bit(i, 1) == b) {
                rest.amps[static_cast<std::size_t>(d.bit(i, 0) * 2 + d.bit(i, 2))] = d.amps[i];
            }
        }
        EXPECT_NEAR(overlap(*r.post_state, rest), 1.0, 1e-12);
    }
}

TEST(MeasureBell, EigenstatesAreCertain) {
    RandomSource rng(7);
    for (BellKind k : kAllBellKinds) {
        for (int rep = 0; rep < 20; ++rep) {
            auto r = measure_bell(prepare_bell(k), "q0", "q1", rng);
            EXPECT_EQ(std::get<BellKind>(r.outcome), k);
            EXPECT_NEAR(r.probability, 1.0, 1e-12);
            EXPECT_FALSE(r.post_state.has_value());
        }
    }
}

TEST(MeasureBell, ProductStatesFollowParityRule) {
    RandomSource rng(8);
    for (Bit x : {0, 1}) {
        for (Bit y : {0, 1}) {
            const auto s = merge_registers(prepare_z(x, "u"), prepare_z(y, "v"));
            const auto d = to_oracle(s);
            for (std::size_t k = 0; k < 4; ++k) {
                const double want = (bell_parity(kAllBellKinds[k]) == (x ^ y)) ? 0.5 : 0.0;
                EXPECT_NEAR(oracle::prob_bell(d, "u", "v", static_cast<int>(k)), want, 1e-12);
            }
            for (int rep = 0; rep < 50; ++rep) {
                auto r = measure_bell(s, "u", "v", rng);
                const auto k = std::get<BellKind>(r.outcome);
                EXPECT_EQ(bell_parity(k), x ^ y);
                EXPECT_NEAR(r.probability, 0.5, 1e-12);
            }
        }
    }
}

TEST(MeasureBell, ProbabilityAndPostStateMatchOracle) {
    RandomSource rng(9);
    for (int rep = 0; rep < 100; ++rep) {
        auto s = random_state({"a", "b", "c", "d"}, rng);
        auto d = to_oracle(s);
        auto r = measure_bell(s, "d", "b", rng);
        const auto k = std::get<BellKind>(r.outcome);
        const auto idx = static_cast<int>(std::find(kAllBellKinds.begin(), kAllBellKinds.end(), k) - kAllBellKinds.begin());
        EXPECT_NEAR(r.probability, oracle::prob_bell(d, "d", "b", idx), 1e-12);
        auto rest = oracle::project_pair(d, "d", "b", oracle::bell_vectors()[static_cast<std::size_t>(idx)]);
        ASSERT_TRUE(r.post_state.has_value());
        EXPECT_NEAR(overlap(*r.post_state, rest), 1.0, 1e-12);
    }
}

TEST(MeasureAb, BranchCollapseAndCertainty) {
    RandomSource rng(10);
    const OrthonormalPair plus{{kS, kS}, {kS, -kS}};
    for (int rep = 0; rep < 20; ++rep) {
        auto r = measure_ab(prepare_qubit(plus.a), "q0", plus, rng);
        EXPECT_EQ(std::get<AbOutcome>(r.outcome), AbOutcome::A);
        EXPECT_NEAR(r.probability, 1.0, 1e-12);
    }
    auto s = prepare_ghz_like(BellKind::PsiPlus, BellKind::PhiPlus, OrthonormalPair::computational());
    for (int rep = 0; rep < 20; ++rep) {
        auto r = measure_ab(s, "q2", OrthonormalPair::computational(), rng);
        if (std::get<AbOutcome>(r.outcome) == AbOutcome::A) {
            expect_amps(*r.post_state, {kS, 0, 0, kS});
        } else {
            expect_amps(*r.post_state, {0, kS, kS, 0});
        }
    }
}

TEST(MeasureAb, ProbabilitiesMatchOracleAndSumToOne) {
    RandomSource rng(11);
    const Amplitude i1{0, 1};
    const OrthonormalPair basis{{kS, i1 * kS}, {kS, -i1 * kS}};
    for (int rep = 0; rep < 50; ++rep) {
        auto s = random_state({"a", "b"}, rng);
        auto d = to_oracle(s);
        const double pa = oracle::prob_state(d, "a", basis.a[0], basis.a[1]);
        const double pb = oracle::prob_state(d, "a", basis.b[0], basis.b[1]);
        EXPECT_NEAR(pa + pb, 1.0, 1e-12);
        auto r = measure_ab(s, "a", basis, rng);
        EXPECT_NEAR(r.probability, std::get<AbOutcome>(r.outcome) == AbOutcome::A ? pa : pb, 1e-12);
    }
    try {
        measure_ab(prepare_z(0), "q0", OrthonormalPair{{1, 0}, {1, 0}}, rng);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NonOrthonormalBasis);
    }
}

TEST(MergeRegisters, OrderingAndNorm) {
    auto s = merge_registers(prepare_z(0, "z"), prepare_bell(BellKind::PsiPlus, "a", "b"));
    expect_amps(s, {kS, 0, 0, kS, 0, 0, 0, 0});
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    try {
        merge_registers(prepare_z(0, "x"), prepare_z(1, "x"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateLabel);
    }
}

TEST(MergeRegisters, MatchesOracleKron) {
    RandomSource rng(12);
    auto a = random_state({"a", "b"}, rng);
    auto b = random_state({"c"}, rng);
    expect_amps(merge_registers(a, b), oracle::kron(to_oracle(a), to_oracle(b)).amps);
}

TEST(MergeRegisters, UntouchedMarginalsSurviveMeasurement) {
    RandomSource rng(13);
    auto a = random_state({"a", "b"}, rng);
    auto b = random_state({"c", "d"}, rng);
    const double before = oracle::prob_z(to_oracle(b), "d", 1);
    auto merged = merge_registers(a, b);
    EXPECT_NEAR(oracle::prob_z(to_oracle(merged), "d", 1), before, 1e-12);
    // Averaged over the outcome of measuring "a", d's marginal is unchanged.
    const auto d = to_oracle(merged);
    double avg = 0;
    for (int v : {0, 1}) {
        const double pv = oracle::prob_z(d, "a", v);
        oracle::Dense cond = d;
        for (std::size_t i = 0; i < cond.amps.size(); ++i) {
            if (cond.bit(i, 0) != v) {
                cond.amps[i] = 0;
            }
        }
        avg += pv == 0 ? 0 : oracle::prob_z(cond, "d", 1);
    }
    EXPECT_NEAR(avg, before, 1e-12);
}

TEST(StateVector, RejectsBadInput) {
    try {
        StateVector({"a"}, {1, 0, 0});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidState);
    }
    try {
        StateVector({"a"}, {1, 1});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidState);
    }
    try {
        StateVector({"a", "a"}, {1, 0, 0, 0});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateLabel);
    }
}

TEST(Properties, ProductStateBellParityRuleExhaustive) {
    for (std::size_t idx = 0; idx < 4; ++idx) {
        const auto d = oracle::basis_state({"u", "v"}, idx);
        const int x = static_cast<int>(idx >> 1), y = static_cast<int>(idx & 1);
        for (std::size_t k = 0; k < 4; ++k) {
            const bool same_class = bell_parity(kAllBellKinds[k]) == (x ^ y);
            EXPECT_NEAR(oracle::prob_bell(d, "u", "v", static_cast<int>(k)), same_class ? 0.5 : 0.0, 1e-12);
        }
        RandomSource rng(idx);
        auto s = merge_registers(prepare_z(static_cast<Bit>(x), "u"), prepare_z(static_cast<Bit>(y), "v"));
        for (int rep = 0; rep < 20; ++rep) {
            EXPECT_EQ(bell_parity(std::get<BellKind>(measure_bell(s, "u", "v", rng).outcome)), x ^ y);
        }
    }
}

TEST(Properties, NormPreservedUnderRandomSequences) {
    RandomSource rng(14);
    double worst = 0;
    for (int seq = 0; seq < 2000; ++seq) {
        std::vector<QubitLabel> labels{"a", "b", "c", "d"};
        StateVector s = random_state(labels, rng);
        for (int step = 0; step < 8 && s.num_qubits() > 0; ++step) {
            const auto &ls = s.labels();
            const auto pick = [&] { return ls[rng.below(ls.size())]; };
            const auto op = rng.below(4);
            if (op == 0 && ls.size() >= 2) {
                auto c = pick(), t = pick();
                if (c != t) {
                    s = apply_cnot(s, c, t);
                }
            } else if (op == 1) {
                s = apply_x(s, pick());
            } else if (op == 2 && ls.size() >= 3) {
                auto q = pick(), r = pick();
                if (q != r) {
                    auto rec = measure_bell(s, q, r, rng);
                    s = *rec.post_state;
                }
            } else if (ls.size() >= 2) {
                auto rec = measure_z(s, pick(), rng);
                s = *rec.post_state;
            }
            worst = std::max(worst, std::abs(s.norm_squared() - 1.0));
        }
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Properties, RelabelingEquivariance) {
    RandomSource rng(15);
    auto s = random_state({"a", "b", "c"}, rng);
    // Same physical state with the register stored in another order.
    const auto amps = s.amplitudes();
    std::vector<Amplitude> reordered(8);
    for (std::size_t i = 0; i < 8; ++i) {
        const std::size_t a = (i >> 2) & 1, b = (i >> 1) & 1, c = i & 1;
        reordered[(c << 2) | (a << 1) | b] = amps[i];
    }
    StateVector t({"c", "a", "b"}, reordered);
    s = apply_cnot(apply_x(s, "b"), "c", "a");
    t = apply_cnot(apply_x(t, "b"), "c", "a");
    const auto sa = s.amplitudes(), ta = t.amplitudes();
    for (std::size_t i = 0; i < 8; ++i) {
        const std::size_t a = (i >> 2) & 1, b = (i >> 1) & 1, c = i & 1;
        EXPECT_NEAR(std::abs(sa[i] - ta[(c << 2) | (a << 1) | b]), 0.0, 1e-12);
    }
}

TEST(Properties, BornRuleChiSquareZ) {
    RandomSource rng(16);
    auto s = random_state({"a", "b"}, rng);
    const double p1 = oracle::prob_z(to_oracle(s), "a", 1);
    const int trials = 20000;
    int ones = 0;
    for (int i = 0; i < trials; ++i) {
        ones += std::get<Bit>(measure_z(s, "a", rng).outcome);
    }
    const double e1 = trials * p1, e0 = trials - e1;
    const double chi = (ones - e1) * (ones - e1) / e1 + ((trials - ones) - e0) * ((trials - ones) - e0) / e0;
    EXPECT_LT(chi, chi_square_critical(1));
}

TEST(Properties, BornRuleChiSquareBell) {
    RandomSource rng(17);
    auto s = random_state({"a", "b", "c"}, rng);
    const auto d = to_oracle(s);
    const int trials = 20000;
    std::map<BellKind, int> counts;
    for (int i = 0; i < trials; ++i) {
        ++counts[std::get<BellKind>(measure_bell(s, "a", "c", rng).outcome)];
    }
    double chi = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        const double e = trials * oracle::prob_bell(d, "a", "c", static_cast<int>(k));
        const double o = counts[kAllBellKinds[k]];
        chi += (o - e) * (o - e) / e;
    }
    EXPECT_LT(chi, chi_square_critical(3));
}

TEST(Properties, BornRuleChiSquareAb) {
    RandomSource rng(18);
    const OrthonormalPair basis{{0.6, 0.8}, {0.8, -0.6}};
    auto s = random_state({"a", "b"}, rng);
    const double pa = oracle::prob_state(to_oracle(s), "b", basis.a[0], basis.a[1]);
    const int trials = 20000;
    int as = 0;
    for (int i = 0; i < trials; ++i) {
        as += std::get<AbOutcome>(measure_ab(s, "b", basis, rng).outcome) == AbOutcome::A ? 1 : 0;
    }
    const double ea = trials * pa, eb = trials - ea;
    const double chi = (as - ea) * (as - ea) / ea + ((trials - as) - eb) * ((trials - as) - eb) / eb;
    EXPECT_LT(chi, chi_square_critical(1));
}

TEST(QuantumLab, MergesOnGatesAndSplitsAfterMeasurement) {
    QuantumLab lab;
    RandomSource rng(19);
    auto [h, t] = lab.prepare_bell("alice", BellKind::PsiPlus, "H", "T");
    auto e = lab.prepare_z("eve", 0, "E");
    EXPECT_EQ(lab.register_count(), 2u);
    lab.apply_cnot("eve", t, e);
    EXPECT_EQ(lab.register_count(), 1u);
    EXPECT_EQ(lab.register_of(h).num_qubits(), 3u);
    lab.apply_cnot("eve", t, e);
    const Bit b = lab.measure_z("eve", e, rng);
    EXPECT_EQ(b, 0);
    EXPECT_FALSE(lab.contains(e));
    EXPECT_EQ(lab.measure_bell("alice", h, t, rng), BellKind::PsiPlus);
    EXPECT_EQ(lab.live_qubits(), 0u);
    ASSERT_EQ(lab.calls().size(), 6u);
    EXPECT_EQ(lab.calls()[2].actor, "eve");
    EXPECT_EQ(lab.calls()[2].primitive, Primitive::ApplyCnot);
}

TEST(QuantumLab, SplitsProductFactorsAfterMeasurement) {
    QuantumLab lab;
    RandomSource rng(20);
    auto [a, b] = lab.prepare_bell("x", BellKind::PsiPlus, "a", "b");
    auto [c, d] = lab.prepare_bell("x", BellKind::PhiMinus, "c", "d");
    lab.apply_cnot("x", b, c);
    EXPECT_EQ(lab.register_count(), 1u);
    lab.measure_z("x", a, rng);
    lab.measure_z("x", b, rng);
    // c and d are a Bell pair again, isolated from everything else.
    EXPECT_EQ(lab.register_of(c).num_qubits(), 2u);
    EXPECT_EQ(lab.register_count(), 1u);
}

TEST(QuantumLab, LongEntanglementChainsStaySmall) {
    QuantumLab lab;
    auto first = lab.prepare_z("x", 0, "g");
    lab.apply_x("x", first);
    std::vector<QubitLabel> chain{first};
    for (int i = 0; i < 200; ++i) {
        auto q = lab.prepare_z("x", 0, "g");
        lab.apply_cnot("x", chain.back(), q);
        chain.push_back(q);
    }
    EXPECT_EQ(lab.register_of(first).num_qubits(), 201u);
    EXPECT_EQ(lab.register_of(first).terms().size(), 1u);
}

TEST(QuantumLab, UnknownLabelIsReported) {
    QuantumLab lab;
    RandomSource rng(22);
    try {
        lab.measure_z("x", "ghost", rng);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownLabel);
    }
}
