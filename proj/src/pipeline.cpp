#include "qfan/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace qfan {

namespace {

using ojson = nlohmann::ordered_json;

ojson ivec_json(const IVec& v)
{
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

ojson imat_json(const IMat& m)
{
    ojson a = ojson::array();
    for (const auto& row : m) a.push_back(ivec_json(row));
    return a;
}

ojson rmat_json(const RMat& m)
{
    ojson a = ojson::array();
    for (const auto& row : m) {
        ojson r = ojson::array();
        for (const auto& x : row) r.push_back(rat_str(x));
        a.push_back(r);
    }
    return a;
}

ojson qpoly_json(const QPoly& p)
{
    ojson a = ojson::array();
    for (const auto& [e, c] : p.terms()) {
        ojson t = ojson::object();
        ojson ee = ojson::array();
        for (int v : e) ee.push_back(v);
        t["q"] = ee;
        t["c"] = rat_str(c);
        a.push_back(t);
    }
    return a;
}

ojson qpmat_json(const QPMat& m)
{
    ojson a = ojson::array();
    for (const auto& row : m) {
        ojson r = ojson::array();
        for (const auto& p : row) r.push_back(qpoly_json(p));
        a.push_back(r);
    }
    return a;
}

ojson weyl_json(const WeylOperator& op)
{
    ojson terms = ojson::array();
    for (const auto& [k, c] : op.terms()) {
        ojson t = ojson::object();
        ojson e = ojson::array(), al = ojson::array();
        for (int v : k.e) e.push_back(v);
        for (int v : k.alpha) al.push_back(v);
        t["q"] = e;
        t["z"] = k.j;
        t["theta"] = al;
        t["Ez"] = k.beta;
        t["c"] = rat_str(c);
        terms.push_back(t);
    }
    ojson out = ojson::object();
    out["text"] = op.str();
    out["terms"] = terms;
    return out;
}

ojson series_json(const LogLaurentSeries& s)
{
    const GradedAlgebra& ga = s.algebra();
    ojson keys = ojson::array();
    for (const auto& [k, v] : s.coefficients()) {
        ojson t = ojson::object();
        ojson e = ojson::array(), al = ojson::array(), val = ojson::array();
        for (int x : k.e) e.push_back(x);
        for (int x : k.alpha) al.push_back(x);
        for (const auto& x : v) val.push_back(rat_str(x));
        t["q"] = e;
        t["z"] = k.j;
        t["logq"] = al;
        t["logz"] = k.beta;
        t["value"] = val;
        keys.push_back(t);
    }
    ojson out = ojson::object();
    ojson labels = ojson::array();
    for (std::size_t i = 0; i < ga.dim(); ++i) labels.push_back(ga.basis_label(i));
    out["basis"] = labels;
    out["coefficients"] = keys;
    return out;
}

ojson header(const std::string& command)
{
    ojson j = ojson::object();
    j["schema_version"] = 1;
    j["command"] = command;
    return j;
}

struct Stage {
    std::string name;
    bool pass;
    std::string witness;
};

}  // namespace

VerifyOutcome run_verify(const FanFile& ff, int q_order, int semigroup_bound)
{
    VerifyOutcome out;
    ojson rep = header("verify");
    std::vector<Stage> stages;
    auto stage = [&](const std::string& name, bool pass, const std::string& witness = "") {
        stages.push_back({name, pass, witness});
        return pass;
    };
    bool ok = true;

    try {
        FanReport fr = validate_fan(ff.fan);
        ok = stage("validate", fr.ok(), fr.diagnostics.empty() ? "" : fr.diagnostics.front());
        if (ok) {
            FanoType ft = classify_fano(ff.fan);
            rep["fano"] = fano_name(ft);
            ok = stage("classify", ft != FanoType::Neither,
                       ft == FanoType::Neither ? "NotWeakFano" : "");
            if (ok) {
                ExactSequenceData esd = exact_sequence(ff.fan, ff.nef_basis);
                stage("exact_sequence", true);
                auto prels = primitive_relations(ff.fan, esd);
                stage("primitive_relations", !prels.empty());

                SemigroupReport sg = semigroup_report(ff.fan, semigroup_bound);
                ok = stage("semigroup", sg.positive && sg.normal_up_to_K && sg.gorenstein_up_to_K);

                GradedAlgebra ga = build_algebra(esd, prels);
                ok = stage("cohomology", ga.dim() ==
                                             static_cast<std::size_t>(normalized_volume(ff.fan))) &&
                     ok;

                bool positive_grading = true;
                for (const auto& kk : esd.euler_weights)
                    positive_grading = positive_grading && kk > 0;
                QRingMode mode =
                    positive_grading ? QRingMode::GradedExact : QRingMode::QTruncated;
                QuantumRing ring = batyrev_quantum_ring(esd, prels, ga, mode, q_order);
                stage("batyrev_ring", true);

                IFunctionData idata = build_I(esd, ga, q_order);
                LogLaurentSeries itilde = build_I_tilde(esd, ga, q_order);
                bool ann = true;
                std::string ann_witness;
                for (const auto& pr : prels) {
                    auto res = check_annihilation(reduced_box_operator(esd, pr.relation), itilde);
                    if (!res.pass) {
                        ann = false;
                        ann_witness = "box operator residual";
                    }
                }
                {
                    auto res = check_annihilation(euler_operator(esd, false), itilde);
                    if (!res.pass) {
                        ann = false;
                        ann_witness = "euler operator residual";
                    }
                }
                ok = stage("annihilation", ann, ann_witness) && ok;

                MirrorMap mm = mirror_map(idata);
                if (ft == FanoType::Fano && !mm.identity)
                    ok = stage("mirror_map", false, "nonzero gamma' on a Fano fan") && ok;
                else
                    stage("mirror_map", true);

                LogLaurentSeries jfull = invert_and_substitute(idata.full, mm);
                LogLaurentSeries jinterior = mul_exp_delta(jfull, -1);
                if (!jinterior.log_free())
                    throw Error("InternalError", "flat-coordinate series carries logs");

                ExtractionResult ext = birkhoff_extract(ga, esd, jinterior);
                ok = stage("birkhoff_extract", ext.z_free && ext.c_no_positive_z, ext.residual) &&
                     ok;

                if (ext.z_free && ext.c_no_positive_z) {
                    auto [a0, ainf] = origin_connection(ga, esd);
                    ConnectionData cd;
                    cd.A0 = a0;
                    cd.Ainf = ainf;
                    cd.Omega = ext.omega_flat;
                    cd.pairing = ga.poincare_pairing_matrix();
                    cd.n = ga.n;
                    cd.euler_weights = esd.euler_weights;
                    for (std::size_t i = 0; i < ga.dim(); ++i)
                        cd.basis_labels.push_back(ga.basis_label(i));

                    FlatnessReport flat = flatness_report(cd);
                    ok = stage("flatness", flat.ok(), flat.witness) && ok;
                    PairingReport pairing = pairing_report(ga, cd);
                    ok = stage("pairing", pairing.ok(), pairing.witness) && ok;
                    ok = stage("residue_nilpotency", residue_nilpotency(cd)) && ok;

                    CompareResult cmp = compare_quantum_rings(ring, ext, mm, ga);
                    ok = stage("compare_quantum_rings", cmp.match, cmp.witness) && ok;
                }
            }
        }
    } catch (const Error& e) {
        stages.push_back({"error", false, std::string(e.code()) + ": " + e.what()});
        ok = false;
    }

    for (const auto& s : stages) ok = ok && s.pass;
    ojson st = ojson::array();
    for (const auto& s : stages) {
        ojson j = ojson::object();
        j["stage"] = s.name;
        j["pass"] = s.pass;
        if (!s.witness.empty()) j["witness"] = s.witness;
        st.push_back(j);
    }
    rep["stages"] = st;
    rep["pass"] = ok;
    out.pass = ok;
    out.report_json = rep.dump(2);
    return out;
}

int dispatch(const RunConfig& cfg, std::string& out)
{
    try {
        FanFile ff = parse_fan_file(cfg.input);
        return dispatch_parsed(cfg, ff, out);
    } catch (const Error& e) {
        ojson j = header(cfg.command);
        j["error"] = e.code();
        j["message"] = e.what();
        out = j.dump(2);
        return e.code() == "SchemaError" || e.code() == "IoError" ? 2 : 1;
    }
}

int dispatch_parsed(const RunConfig& cfg, const FanFile& ff, std::string& out)
{
    try {
        if (cfg.q_order < 1) throw Error("SchemaError", "order must be >= 1");
        if (cfg.semigroup_bound < 1) throw Error("SchemaError", "bound must be >= 1");
        const std::string& cmd = cfg.command;

        if (cmd == "check-fan") {
            FanReport fr = validate_fan(ff.fan);
            ojson j = header(cmd);
            j["smooth"] = fr.smooth;
            j["complete"] = fr.complete;
            j["projective"] = fr.projective;
            j["diagnostics"] = fr.diagnostics;
            out = j.dump(2);
            return fr.ok() ? 0 : 1;
        }

        ensure_valid(ff.fan);

        if (cmd == "classify") {
            ojson j = header(cmd);
            j["fano"] = fano_name(classify_fano(ff.fan));
            j["normalized_volume"] = normalized_volume(ff.fan);
            out = j.dump(2);
            return 0;
        }
        if (cmd == "verify") {
            VerifyOutcome vo = run_verify(ff, cfg.q_order, cfg.semigroup_bound);
            if (cfg.fixture_mode && vo.pass) {
                // golden-file mode: append the connection report for regression diffs
                RunConfig sub = cfg;
                sub.command = "connection";
                std::string conn;
                if (dispatch_parsed(sub, ff, conn) == 0) {
                    ojson j = ojson::parse(vo.report_json);
                    j["connection"] = ojson::parse(conn);
                    vo.report_json = j.dump(2);
                }
            }
            out = vo.report_json;
            return vo.pass ? 0 : 1;
        }

        ExactSequenceData esd = exact_sequence(ff.fan, ff.nef_basis);
        auto prels = primitive_relations(ff.fan, esd);

        if (cmd == "exact-seq") {
            ojson j = header(cmd);
            j["A"] = imat_json(esd.A);
            j["M"] = imat_json(esd.M);
            j["G"] = imat_json(esd.G);
            j["rho"] = ivec_json(esd.rho);
            j["euler_weights"] = ivec_json(esd.euler_weights);
            j["basis_generates_nef"] = esd.basis_generates_nef;
            out = j.dump(2);
            return 0;
        }
        if (cmd == "mori") {
            MoriNefReport mr = mori_nef_cones(ff.fan, esd);
            ojson j = header(cmd);
            ojson mg = ojson::array();
            for (const auto& l : mr.mori_generators) mg.push_back(ivec_json(l));
            ojson ng = ojson::array();
            for (const auto& y : mr.nef_generators) ng.push_back(ivec_json(y));
            j["mori_generators"] = mg;
            j["nef_generators"] = ng;
            j["basis_generates_nef"] = mr.basis_generates_nef;
            j["duality_ok"] = mr.duality_ok;
            out = j.dump(2);
            return 0;
        }
        if (cmd == "semigroup") {
            SemigroupReport sr = semigroup_report(ff.fan, cfg.semigroup_bound);
            ojson j = header(cmd);
            j["bound"] = sr.bound;
            j["positive"] = sr.positive;
            j["normal_up_to_K"] = sr.normal_up_to_K;
            j["gorenstein_up_to_K"] = sr.gorenstein_up_to_K;
            ojson ce = ojson::array();
            for (const auto& x : sr.counterexamples) ce.push_back(ivec_json(x));
            j["counterexamples"] = ce;
            out = j.dump(2);
            return sr.positive && sr.normal_up_to_K && sr.gorenstein_up_to_K ? 0 : 1;
        }

        GradedAlgebra ga = build_algebra(esd, prels);

        if (cmd == "cohomology") {
            ojson j = header(cmd);
            ojson labels = ojson::array();
            for (std::size_t i = 0; i < ga.dim(); ++i) labels.push_back(ga.basis_label(i));
            j["basis"] = labels;
            ojson dims = ojson::array();
            for (int d = 0; d <= ga.n; ++d)
                dims.push_back(std::count(ga.basis_degree.begin(), ga.basis_degree.end(), d));
            j["dims_by_degree"] = dims;
            ojson table = ojson::array();
            for (std::size_t i = 0; i < ga.dim(); ++i)
                for (std::size_t j2 = 0; j2 < ga.dim(); ++j2) {
                    AlgebraElement prod = ga.mul(ga.monomial(ga.basis[i]), ga.monomial(ga.basis[j2]));
                    for (std::size_t k = 0; k < ga.dim(); ++k)
                        if (prod[k] != 0) {
                            ojson t = ojson::array();
                            t.push_back(i);
                            t.push_back(j2);
                            t.push_back(k);
                            t.push_back(rat_str(prod[k]));
                            table.push_back(t);
                        }
                }
            j["mult_table"] = table;
            j["pairing"] = rmat_json(ga.poincare_pairing_matrix());
            out = j.dump(2);
            return 0;
        }
        if (cmd == "gkz-ops") {
            ojson j = header(cmd);
            ojson boxes = ojson::array();
            for (const auto& pr : prels) {
                ojson b = ojson::object();
                ojson coll = ojson::array();
                for (int i : pr.collection) coll.push_back(i + 1);
                b["collection"] = coll;
                b["l"] = ivec_json(pr.relation);
                b["reduced_box"] = weyl_json(reduced_box_operator(esd, pr.relation));
                boxes.push_back(b);
            }
            j["reduced_boxes"] = boxes;
            j["euler_flat"] = weyl_json(euler_operator(esd, false));
            j["euler_lattice"] = weyl_json(euler_operator(esd, true));
            for (auto variant : {AmbientVariant::Classical, AmbientVariant::Hat,
                                 AmbientVariant::Prime, AmbientVariant::DoublePrime}) {
                AmbientFamily fam = ambient_box_operators(esd, {}, variant);
                ojson f = ojson::object();
                ojson bs = ojson::array();
                for (const auto& b : fam.boxes) bs.push_back(b.str(fam.names));
                ojson zs = ojson::array();
                for (const auto& z : fam.z_ops) zs.push_back(z.str(fam.names));
                f["boxes"] = bs;
                f["Z"] = zs;
                f["E"] = fam.euler.str(fam.names);
                j["ambient_" + ambient_variant_name(variant)] = f;
            }
            out = j.dump(2);
            return 0;
        }
        if (cmd == "qring") {
            bool positive_grading = true;
            for (const auto& kk : esd.euler_weights)
                positive_grading = positive_grading && kk > 0;
            QRingMode mode = positive_grading ? QRingMode::GradedExact : QRingMode::QTruncated;
            QuantumRing ring = batyrev_quantum_ring(esd, prels, ga, mode, cfg.q_order);
            ojson j = header(cmd);
            j["mode"] = mode == QRingMode::GradedExact ? "graded_exact" : "q_truncated";
            j["q_order"] = ring.q_order;
            ojson labels = ojson::array();
            for (std::size_t i = 0; i < ga.dim(); ++i) labels.push_back(ga.basis_label(i));
            j["basis"] = labels;
            ojson ms = ojson::array();
            for (const auto& m : ring.M) ms.push_back(qpmat_json(m));
            j["M"] = ms;
            out = j.dump(2);
            return 0;
        }
        if (cmd == "ifunction") {
            IFunctionData idata = build_I(esd, ga, cfg.q_order);
            ojson j = header(cmd);
            j["order"] = cfg.q_order;
            j["I"] = series_json(idata.full);
            j["interior"] = series_json(idata.interior);
            j["I_tilde_gamma_free"] = series_json(build_I_tilde(esd, ga, cfg.q_order));
            out = j.dump(2);
            return 0;
        }
        if (cmd == "mirror-map") {
            IFunctionData idata = build_I(esd, ga, cfg.q_order);
            MirrorMap mm = mirror_map(idata);
            ojson j = header(cmd);
            j["identity"] = mm.identity;
            ojson gs = ojson::array(), ks = ojson::array(), is = ojson::array();
            for (int a = 0; a < ga.r; ++a) {
                gs.push_back(qpoly_json(mm.gamma_prime[a]));
                ks.push_back(qpoly_json(mm.kappa_unit[a]));
                is.push_back(qpoly_json(mm.inverse_unit[a]));
            }
            j["gamma_prime"] = gs;
            j["kappa_over_q"] = ks;
            j["kappa_inverse_over_q"] = is;
            out = j.dump(2);
            return 0;
        }
        if (cmd == "connection") {
            FanoType ft = classify_fano(ff.fan);
            IFunctionData idata = build_I(esd, ga, cfg.q_order);
            MirrorMap mm = mirror_map(idata);
            LogLaurentSeries jinterior = mul_exp_delta(invert_and_substitute(idata.full, mm), -1);
            ExtractionResult ext = birkhoff_extract(ga, esd, jinterior);
            if (!ext.z_free || !ext.c_no_positive_z)
                throw Error("ZResidual", ext.residual);
            auto [a0, ainf] = origin_connection(ga, esd);
            ojson j = header(cmd);
            j["fano"] = fano_name(ft);
            ojson labels = ojson::array();
            for (std::size_t i = 0; i < ga.dim(); ++i) labels.push_back(ga.basis_label(i));
            j["basis"] = labels;
            j["A0"] = rmat_json(a0);
            j["Ainf"] = rmat_json(ainf);
            ojson os = ojson::array();
            for (const auto& om : ext.omega_flat) os.push_back(qpmat_json(om));
            j["Omega"] = os;
            j["Y0"] = qpmat_json(ext.y0);
            j["pairing"] = rmat_json(ga.poincare_pairing_matrix());
            out = j.dump(2);
            return 0;
        }
        throw Error("SchemaError", "unknown command " + cmd);
    } catch (const Error& e) {
        ojson j = header(cfg.command);
        j["error"] = e.code();
        j["message"] = e.what();
        out = j.dump(2);
        return e.code() == "SchemaError" || e.code() == "IoError" ? 2 : 1;
    }
}

}  // namespace qfan
