#include "qfan/connection.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <memory>

using namespace qfan;

namespace {

struct Setup {
    ExactSequenceData esd;
    std::vector<PrimitiveRelation> prels;
    std::unique_ptr<GradedAlgebra> ga;  // stable address: series keep a pointer to it
    QuantumRing ring;
    IFunctionData idata;
    MirrorMap mm;
};

Setup make(const char* name, int order)
{
    Setup s;
    FanData fan = load_fixture(name).fan;
    s.esd = exact_sequence(fan);
    s.prels = primitive_relations(fan, s.esd);
    s.ga = std::make_unique<GradedAlgebra>(build_algebra(s.esd, s.prels));
    QRingMode mode = classify_fano(fan) == FanoType::Fano ? QRingMode::GradedExact
                                                          : QRingMode::QTruncated;
    s.ring = batyrev_quantum_ring(s.esd, s.prels, *s.ga, mode, order);
    s.idata = build_I(s.esd, *s.ga, order);
    s.mm = mirror_map(s.idata);
    return s;
}

ExtractionResult extract(const Setup& s, bool use_kappa)
{
    LogLaurentSeries interior =
        use_kappa ? mul_exp_delta(invert_and_substitute(s.idata.full, s.mm), -1)
                  : s.idata.interior;
    return birkhoff_extract(*s.ga, s.esd, interior);
}

ConnectionData connection_of(const Setup& s, const ExtractionResult& ext)
{
    auto [a0, ainf] = origin_connection(*s.ga, s.esd);
    ConnectionData cd;
    cd.A0 = a0;
    cd.Ainf = ainf;
    cd.Omega = ext.omega_flat;
    cd.pairing = s.ga->poincare_pairing_matrix();
    cd.n = s.ga->n;
    cd.euler_weights = s.esd.euler_weights;
    return cd;
}

}  // namespace

TEST_CASE("origin connection on P1 and P2")
{
    auto p1 = make("p1.toml", 3);
    auto [a0, ainf] = origin_connection(*p1.ga, p1.esd);
    CHECK(a0 == RMat{{Rat(0), Rat(0)}, {Rat(-2), Rat(0)}});
    CHECK(ainf == RMat{{Rat(0), Rat(0)}, {Rat(0), Rat(1)}});

    auto p2 = make("p2.toml", 3);
    auto [b0, binf] = origin_connection(*p2.ga, p2.esd);
    CHECK(b0[1][0] == -3);  // 1 -> -3p
    CHECK(b0[2][1] == -3);  // p -> -3p^2
    CHECK(b0[0][2] == 0);
    CHECK(binf[2][2] == 2);

    // [Ainf, A0] = A0 on both
    for (auto [A0, Ainf] : {std::pair{a0, ainf}, std::pair{b0, binf}}) {
        RMat lhs = rmul(Ainf, A0), rhs = rmul(A0, Ainf);
        for (std::size_t i = 0; i < A0.size(); ++i)
            for (std::size_t j = 0; j < A0.size(); ++j)
                CHECK(lhs[i][j] - rhs[i][j] == A0[i][j]);
    }
}

TEST_CASE("extraction on P1 gives the quantum multiplication")
{
    auto s = make("p1.toml", 4);
    ExtractionResult ext = extract(s, true);
    CHECK(ext.z_free);
    CHECK(ext.c_no_positive_z);
    REQUIRE(ext.omega_word.size() == 1);
    const QPMat& om = ext.omega_word[0];
    CHECK(om[0][0].is_zero());
    CHECK(om[0][1] == QPoly::monomial(1, 4, {1}));
    CHECK(om[1][0] == QPoly::constant(1, 4, 1));
    CHECK(om[1][1].is_zero());
    // Y0 is the identity here
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            if (i == j)
                CHECK(ext.y0[i][j] == QPoly::constant(1, 4, 1));
            else
                CHECK(ext.y0[i][j].is_zero());
        }
    // flat frame equals word frame here
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(ext.omega_flat[0][i][j] == om[i][j]);
}

TEST_CASE("extraction on P2")
{
    auto s = make("p2.toml", 4);
    ExtractionResult ext = extract(s, true);
    REQUIRE(ext.z_free);
    const QPMat& om = ext.omega_word[0];
    CHECK(om[0][2] == QPoly::monomial(1, 4, {1}));
    CHECK(om[1][0] == QPoly::constant(1, 4, 1));
    CHECK(om[2][1] == QPoly::constant(1, 4, 1));
    CHECK(om[0][0].is_zero());
    CHECK(om[1][2].is_zero());
}

TEST_CASE("words realize the basis and Y0 is invertible")
{
    for (const char* name : {"p1.toml", "p2.toml", "p1xp1.toml", "f1.toml"}) {
        CAPTURE(name);
        auto s = make(name, 3);
        ExtractionResult ext = extract(s, true);
        CHECK(ext.words.size() == s.ga->dim());
        CHECK(ext.z_free);
        // unipotent constant term: invertibility is structural
        for (std::size_t i = 0; i < s.ga->dim(); ++i)
            CHECK(ext.y0[i][i].at_zero() == 1);
    }
}

TEST_CASE("flatness, pairing and nilpotency reports pass on all fixtures")
{
    for (const char* name : {"p1.toml", "p2.toml", "p1xp1.toml", "f1.toml", "f2.toml"}) {
        CAPTURE(name);
        auto s = make(name, 3);
        ExtractionResult ext = extract(s, true);
        REQUIRE(ext.z_free);
        ConnectionData cd = connection_of(s, ext);
        FlatnessReport flat = flatness_report(cd);
        CHECK(flat.commute);
        CHECK(flat.potential);
        CHECK(flat.euler);
        PairingReport pr = pairing_report(*s.ga, cd);
        CHECK(pr.selfadjoint);
        CHECK(pr.mu_identity);
        CHECK(pr.z_pole_order);
        CHECK(residue_nilpotency(cd));
        // classical limit of the flat frame is the cup product
        auto ops = s.ga->structure_operators();
        for (std::size_t a = 0; a < cd.Omega.size(); ++a)
            for (std::size_t i = 0; i < s.ga->dim(); ++i)
                for (std::size_t j = 0; j < s.ga->dim(); ++j)
                    CHECK(cd.Omega[a][i][j].at_zero() == ops.P[a][i][j]);
    }
}

TEST_CASE("comparison with the Batyrev ring on the Fano fixtures")
{
    for (const char* name : {"p1.toml", "p2.toml", "p1xp1.toml", "f1.toml"}) {
        CAPTURE(name);
        auto s = make(name, 3);
        ExtractionResult ext = extract(s, true);
        CompareResult cmp = compare_quantum_rings(s.ring, ext, s.mm, *s.ga);
        CHECK(cmp.match);
        INFO(cmp.witness);
        CHECK(cmp.witness.empty());
    }
}

TEST_CASE("F2: comparison fails without the mirror map and passes with it")
{
    auto s = make("f2.toml", 3);

    ExtractionResult raw = extract(s, false);
    CompareResult bad = compare_quantum_rings(s.ring, raw, s.mm, *s.ga);
    CHECK_FALSE(bad.match);
    CHECK_FALSE(bad.witness.empty());

    ExtractionResult fixed = extract(s, true);
    REQUIRE(fixed.z_free);
    REQUIRE(fixed.c_no_positive_z);
    CompareResult good = compare_quantum_rings(s.ring, fixed, s.mm, *s.ga);
    INFO(good.witness);
    CHECK(good.match);
}

TEST_CASE("F2 flat quantum matrices match the extraction oracle")
{
    /* frozen from tests/oracles/f2_extraction_oracle.py; cross-checked against
     * Gromov-Witten numbers of P1xP1 via deformation invariance */
    auto s = make("f2.toml", 3);
    ExtractionResult ext = extract(s, true);
    REQUIRE(ext.z_free);
    auto q = [&](int e1, int e2) { return QPoly::monomial(2, 3, {e1, e2}); };
    const QPMat& q1 = ext.omega_flat[0];
    const QPMat& q2 = ext.omega_flat[1];

    CHECK(q1[0][1] == q(1, 0) + q(1, 1));     // s*s = (qs + qs qf) 1 + 2 sf
    CHECK(q1[3][1] == QPoly::constant(2, 3, 2));
    CHECK(q1[0][2] == q(1, 1));               // s*f = qs qf 1 + sf
    CHECK(q1[3][2] == QPoly::constant(2, 3, 1));
    CHECK(q1[1][3] == q(1, 1));               // s*(sf) = qs qf s + (qs - qs qf) f
    CHECK(q1[2][3] == q(1, 0) - q(1, 1));

    CHECK(q2[0][2] == q(1, 1));               // f*f = qs qf 1
    CHECK(q2[3][2].is_zero());
    CHECK(q2[1][3] == q(1, 1));               // f*(sf) = qs qf s - qs qf f
    CHECK(q2[2][3] == q(1, 1).scaled(-1));
}
