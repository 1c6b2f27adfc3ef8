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

#include <algorithm>

#include "semiq/protocols.hpp"

using namespace semiq;
using namespace semiq::protocols;
using adversary::AttackKind;
using qsim::BellKind;

namespace {

adversary::AttackStrategy attack(AttackKind k) {
    adversary::AttackStrategy s;
    s.kind = k;
    return s;
}

void expect_honest(const SessionOutcome &o) {
    ASSERT_FALSE(o.aborted) << to_string(o.abort_reason);
    EXPECT_EQ(o.key("alice"), o.key("bob"));
    EXPECT_EQ(o.decoy_mismatches, 0u);
    EXPECT_EQ(o.compared_bits, o.matching_bits);
    EXPECT_TRUE(o.eve_inferences.empty());
}

}  // namespace

TEST(Sqka, HonestRunsAgree) {
    for (std::size_t n : {1, 2, 5, 16}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            SqkaConfig c;
            c.n = n;
            c.seed = seed;
            auto o = run_sqka(c);
            expect_honest(o);
            EXPECT_EQ(o.key("alice").size(), n);
            EXPECT_EQ(o.decoys_checked, 3 * n);
        }
    }
}

TEST(Sqka, RawStringsSatisfyKeyIdentity) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        SqkaConfig c;
        c.n = 6;
        c.m = 4;
        c.seed = seed;
        auto o = run_sqka(c);
        ASSERT_TRUE(o.raw);
        EXPECT_EQ(o.raw->r_A, o.raw->r_B);
        EXPECT_EQ(o.raw->K_f, xor_bits(o.raw->K_A, o.raw->K_B));
        EXPECT_EQ(o.key("bob"), o.raw->K_f);
    }
}

TEST(Sqka, ForcedKeys) {
    SqkaConfig c;
    c.n = 4;
    c.seed = 3;
    c.hooks.forced_alice_key = bits_from_string("1100");
    c.hooks.forced_bob_key = bits_from_string("1010");
    auto o = run_sqka(c);
    expect_honest(o);
    EXPECT_EQ(o.key("alice"), bits_from_string("0110"));
    EXPECT_EQ(o.raw->K_B, bits_from_string("1010"));
    EXPECT_TRUE(o.eve_target.empty());
}

TEST(Sqka, RejectsBadInput) {
    SqkaConfig c;
    c.n = 0;
    EXPECT_THROW(run_sqka(c), Error);
    c.n = 2;
    c.m = 0;
    EXPECT_THROW(run_sqka(c), Error);
    c.m.reset();
    c.abort_threshold = 1.5;
    EXPECT_THROW(run_sqka(c), Error);
    c.abort_threshold = 0;
    c.hooks.forced_bob_key = bits_from_string("1");
    try {
        run_sqka(c);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
    }
}

TEST(Sqka, DishonestAliceIsCaught) {
    const Bits target = bits_from_string("11110000");
    int caught = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SqkaConfig c;
        c.n = 8;
        c.seed = seed;
        c.hooks.alice_forces_key = target;
        auto o = run_sqka(c);
        if (o.aborted) {
            EXPECT_EQ(o.abort_reason, AbortReason::CommitmentMismatch);
            EXPECT_TRUE(o.keys.empty());
            ++caught;
        }
    }
    EXPECT_GE(caught, 29);
}

TEST(Sqka, DishonestAliceSucceedsWithoutCommitments) {
    const Bits target = bits_from_string("1011");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SqkaConfig c;
        c.n = 4;
        c.seed = seed;
        c.commitments_enabled = false;
        c.permutation_enabled = false;
        c.hooks.alice_forces_key = target;
        auto o = run_sqka(c);
        ASSERT_FALSE(o.aborted);
        EXPECT_EQ(o.key("bob"), target);
        EXPECT_EQ(o.transcript.count("verify_commitment"), 0u);
    }
}

TEST(Sqka, DishonestBobIsCaught) {
    const Bits target = bits_from_string("00000000");
    int caught = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SqkaConfig c;
        c.n = 8;
        c.seed = seed;
        c.hooks.bob_forces_key = target;
        auto o = run_sqka(c);
        if (o.aborted) {
            EXPECT_EQ(o.abort_reason, AbortReason::CommitmentMismatch);
            ++caught;
        }
    }
    EXPECT_GE(caught, 29);
}

TEST(Sqka, TranscriptOrdering) {
    SqkaConfig c;
    c.n = 3;
    c.seed = 11;
    auto o = run_sqka(c);
    const auto &t = o.transcript;
    const auto commit = t.index_of("commit_K_B");
    const auto ka = t.index_of("announce_K_A");
    const auto pn = t.index_of("reveal_Pi_n");
    const auto pm = t.index_of("reveal_Pi_m");
    ASSERT_TRUE(commit && ka && pn && pm);
    EXPECT_LT(*commit, *pm);
    EXPECT_LT(*pm, *ka);
    EXPECT_LT(*ka, *pn);
    std::size_t alice_kf = 0;
    for (const auto &e : t.events()) {
        if (e.action == "compute_K_f" && e.actor == "alice") {
            alice_kf = e.index;
        }
    }
    EXPECT_GT(alice_kf, *pn);
    EXPECT_EQ(t.find("reveal_Pi_n")->actor, "bob");
}

TEST(Sqka, BobUsesOnlyClassicalPrimitives) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SqkaConfig c;
        c.n = 5;
        c.seed = seed;
        auto o = run_sqka(c);
        for (const auto &p : o.primitives_used["bob"]) {
            EXPECT_TRUE(p == "measure_z" || p == "prepare_z") << p;
        }
        EXPECT_TRUE(o.primitives_used["alice"].contains("prepare_bell"));
        EXPECT_TRUE(o.primitives_used["alice"].contains("measure_bell"));
    }
}

TEST(Sqka, Deterministic) {
    SqkaConfig c;
    c.n = 7;
    c.seed = 42;
    c.attack = attack(AttackKind::MeasureResendZ);
    c.abort_threshold = 1.0;
    EXPECT_EQ(run_sqka(c), run_sqka(c));
    auto d = c;
    d.seed = 43;
    EXPECT_NE(run_sqka(c).transcript, run_sqka(d).transcript);
}

TEST(Sqka, NoneAttackMatchesDefault) {
    SqkaConfig a;
    a.n = 5;
    a.seed = 8;
    SqkaConfig b = a;
    b.attack = attack(AttackKind::None);
    b.attack.eve_rng_seed = 1234;
    EXPECT_EQ(run_sqka(a), run_sqka(b));
}

TEST(Sqka, CnotWithoutPermutationLearnsKey) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SqkaConfig c;
        c.n = 8;
        c.seed = seed;
        c.permutation_enabled = false;
        c.attack = attack(AttackKind::CnotAttack);
        auto o = run_sqka(c);
        ASSERT_FALSE(o.aborted);
        EXPECT_EQ(o.decoy_mismatches, 0u);
        ASSERT_EQ(o.eve_inferences.size(), 8u);
        for (std::size_t i = 0; i < 8; ++i) {
            EXPECT_TRUE(o.eve_inferences[i].known);
            EXPECT_EQ(o.eve_inferences[i].value, o.eve_target[i]);
        }
        EXPECT_EQ(o.eve_target, o.raw->K_B);
    }
}

TEST(Sqka, InterceptResendSingleDecoyAbortRate) {
    int aborts = 0;
    const int reps = 3000;
    for (int seed = 0; seed < reps; ++seed) {
        SqkaConfig c;
        c.n = 1;
        c.m = 1;
        c.commitments_enabled = false;
        c.seed = static_cast<std::uint64_t>(seed);
        c.attack = attack(AttackKind::InterceptResendBellPairs);
        auto o = run_sqka(c);
        if (o.aborted) {
            ++aborts;
            EXPECT_EQ(o.abort_reason, AbortReason::BellMismatch);
        }
    }
    EXPECT_NEAR(aborts / static_cast<double>(reps), 0.75, 0.03);
}

TEST(Sqka, ThresholdSemantics) {
    SqkaConfig c;
    c.n = 4;
    c.m = 8;
    c.attack = attack(AttackKind::MeasureResendZ);
    c.permutation_enabled = false;
    c.abort_threshold = 0.05;
    bool saw = false;
    for (std::uint64_t seed = 0; seed < 20 && !saw; ++seed) {
        c.seed = seed;
        auto o = run_sqka(c);
        if (o.aborted) {
            EXPECT_EQ(o.abort_reason, AbortReason::ThresholdExceeded);
            EXPECT_GT(o.error_rate_observed, 0.05);
            saw = true;
        }
    }
    EXPECT_TRUE(saw);
    c.abort_threshold = 1.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        c.seed = seed;
        EXPECT_FALSE(run_sqka(c).aborted);
    }
}

TEST(Sqkd, HonestRunsShareBobsKey) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SqkaConfig c;
        c.n = 6;
        c.seed = seed;
        auto o = run_sqkd(c);
        expect_honest(o);
        EXPECT_EQ(o.key("alice"), o.raw->K_B);
        EXPECT_EQ(o.transcript.count("announce_K_A"), 0u);
        EXPECT_EQ(o.transcript.count("commit_K_A"), 0u);
    }
}

TEST(KeyBit, Extraction) {
    EXPECT_EQ(extract_bob_key_bit(0, 0), 0);
    EXPECT_EQ(extract_bob_key_bit(0, 1), 1);
    EXPECT_EQ(extract_bob_key_bit(1, 0), 1);
    EXPECT_EQ(extract_bob_key_bit(1, 1), 0);
}

TEST(Cdssqc, GhzHonestRunsDeliverMessage) {
    for (std::size_t n : {1, 3, 8}) {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            CdssqcConfig c;
            c.n = n;
            c.seed = seed;
            auto o = run_cdssqc_ghz(c);
            expect_honest(o);
            EXPECT_TRUE(o.transcript.index_of("announce_branches").has_value());
        }
    }
}

TEST(Cdssqc, GhzOtherResources) {
    for (auto [p1, p2] : {std::pair{BellKind::PsiMinus, BellKind::PhiMinus}, {BellKind::PhiPlus, BellKind::PsiPlus},
                          {BellKind::PsiPlus, BellKind::PsiMinus}}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            CdssqcConfig c;
            c.n = 4;
            c.seed = seed;
            c.psi1 = p1;
            c.psi2 = p2;
            expect_honest(run_cdssqc_ghz(c));
        }
    }
}

TEST(Cdssqc, GhzWithoutAnnouncementLeavesTwoHypotheses) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        CdssqcConfig c;
        c.n = 6;
        c.seed = seed;
        c.charlie_announces = false;
        auto o = run_cdssqc_ghz(c);
        ASSERT_FALSE(o.aborted);
        const auto &a = o.key("bob.hypothesis_a");
        const auto &b = o.key("bob.hypothesis_b");
        EXPECT_EQ(xor_bits(a, b), Bits(6, 1));
        EXPECT_EQ(o.transcript.count("announce_branches"), 0u);
    }
}

TEST(Cdssqc, SwitchHonestRunsDeliverMessage) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CdssqcConfig c;
        c.n = 5;
        c.seed = seed;
        c.message = bits_from_string("10011");
        auto o = run_cdssqc_switch(c);
        expect_honest(o);
        EXPECT_EQ(o.key("bob"), bits_from_string("10011"));
        EXPECT_TRUE(o.transcript.index_of("disclose_Pi_C").has_value());
    }
}

TEST(Cdssqc, SwitchIdentityControllerNeedsNoDisclosure) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CdssqcConfig c;
        c.n = 5;
        c.seed = seed;
        c.charlie_discloses = false;
        c.identity_controller_permutation = true;
        c.permutation_enabled = false;
        expect_honest(run_cdssqc_switch(c));
    }
}

TEST(Cdssqc, AliceIsClassical) {
    for (auto v : {CdssqcVariant::GhzLike, CdssqcVariant::Switch}) {
        CdssqcConfig c;
        c.n = 4;
        c.variant = v;
        auto o = run_cdssqc(c);
        for (const auto &p : o.primitives_used["alice"]) {
            EXPECT_TRUE(p == "measure_z" || p == "prepare_z") << p;
        }
    }
}

TEST(Cdssqc, MeasureResendOnControllerLegIsCaught) {
    int aborts = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CdssqcConfig c;
        c.n = 4;
        c.seed = seed;
        c.attack = attack(AttackKind::MeasureResendZ);
        c.attack.legs = {adversary::Leg::ControllerToReceiver};
        auto o = run_cdssqc_switch(c);
        aborts += o.aborted ? 1 : 0;
    }
    EXPECT_GT(aborts, 90);
}

TEST(Cdssqc, RejectsUnknownLegForTwoPartyProtocols) {
    SqkaConfig c;
    c.attack = attack(AttackKind::MeasureResendZ);
    c.attack.legs = {adversary::Leg::ControllerToReceiver};
    EXPECT_THROW(run_sqka(c), Error);
}

TEST(Sqd, DecodeDialogue) {
    EXPECT_EQ(decode_dialogue(BellKind::PsiPlus, 0), 0);
    EXPECT_EQ(decode_dialogue(BellKind::PsiPlus, 1), 1);
    EXPECT_EQ(decode_dialogue(BellKind::PhiMinus, 0), 1);
    EXPECT_EQ(decode_dialogue(BellKind::PhiPlus, 1), 0);
}

TEST(Sqd, AllSingleBitMessages) {
    for (bool z : {false, true}) {
        for (int a : {0, 1}) {
            for (int b : {0, 1}) {
                SqdConfig c;
                c.n = 1;
                c.seed = static_cast<std::uint64_t>(a * 2 + b);
                c.alice_message = Bits{static_cast<Bit>(a)};
                c.bob_message = Bits{static_cast<Bit>(b)};
                c.final_z_measurement = z;
                auto o = run_sqd(c);
                ASSERT_FALSE(o.aborted);
                EXPECT_EQ(o.key("alice"), Bits{static_cast<Bit>(b)});
                EXPECT_EQ(o.key("bob"), Bits{static_cast<Bit>(a)});
            }
        }
    }
}

TEST(Sqd, HonestRandomMessages) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SqdConfig c;
        c.n = 8;
        c.seed = seed;
        auto o = run_sqd(c);
        ASSERT_FALSE(o.aborted);
        EXPECT_EQ(o.key("alice"), o.key("bob.message"));
        EXPECT_EQ(o.key("bob"), o.key("alice.message"));
        EXPECT_EQ(o.compared_bits, o.matching_bits);
    }
}

TEST(Sqd, CnotWithoutPermutationLearnsBothMessages) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SqdConfig c;
        c.n = 4;
        c.seed = seed;
        c.permutation_enabled = false;
        c.attack = attack(AttackKind::CnotAttack);
        auto o = run_sqd(c);
        ASSERT_FALSE(o.aborted);
        ASSERT_EQ(o.eve_inferences.size(), o.eve_target.size());
        for (std::size_t i = 0; i < o.eve_target.size(); ++i) {
            EXPECT_EQ(o.eve_inferences[i].value, o.eve_target[i]);
        }
    }
}

TEST(Outcome, AbortReasonNames) {
    for (auto r : {AbortReason::None, AbortReason::BellMismatch, AbortReason::CorrelationMismatch,
                   AbortReason::CommitmentMismatch, AbortReason::ThresholdExceeded}) {
        EXPECT_EQ(abort_reason_from_string(to_string(r)), r);
    }
    EXPECT_THROW(abort_reason_from_string("tired"), Error);
    SessionOutcome o;
    EXPECT_THROW(o.key("alice"), Error);
}
