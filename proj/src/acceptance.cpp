#include "fockladder/acceptance.hpp"

#include "fockladder/cavity_sim.hpp"
#include "fockladder/errors.hpp"
#include "fockladder/experiments.hpp"
#include "fockladder/ladder_ops.hpp"
#include "fockladder/observables.hpp"
#include "fockladder/special_functions.hpp"
#include "fockladder/state_factory.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace fockladder {
namespace {

constexpr double kPi = 3.14159265358979323846;

class CriterionBuilder {
public:
    CriterionBuilder(int id, std::string title) { result_.id = id; result_.title = std::move(title); }

    void check_lt(const std::string& label, double measured, double limit)
    {
        add(label, measured, limit, "<", measured < limit);
    }
    void check_le(const std::string& label, double measured, double limit)
    {
        add(label, measured, limit, "<=", measured <= limit);
    }
    void check_gt(const std::string& label, double measured, double limit)
    {
        add(label, measured, limit, ">", measured > limit);
    }
    void check_ge(const std::string& label, double measured, double limit)
    {
        add(label, measured, limit, ">=", measured >= limit);
    }
    void check_abs_le(const std::string& label, double measured, double tol)
    {
        add(label, measured, tol, "abs<=", std::abs(measured) <= tol);
    }
    void check_in(const std::string& label, double measured, double lo, double hi)
    {
        add(label + " >= " + format_number(lo), measured, lo, ">=", measured >= lo);
        add(label + " <= " + format_number(hi), measured, hi, "<=", measured <= hi);
    }

    CriterionResult finish()
    {
        result_.passed = true;
        for (const auto& c : result_.checks) {
            result_.passed = result_.passed && c.passed;
        }
        return std::move(result_);
    }

private:
    void add(const std::string& label, double measured, double limit, const char* cmp, bool ok)
    {
        result_.checks.push_back({label, measured, limit, cmp, ok});
    }

    CriterionResult result_;
};

double q_of(const FieldState& state)
{
    return moments(state).mandel_q.value();
}

// Routes k = 1 through the single-operation entry points so both API layers
// get exercised against the oracle.
FieldState apply_lib(const FieldState& state, LadderOp op, unsigned k)
{
    if (k == 1) {
        switch (op) {
        case LadderOp::Create: return apply_create(state);
        case LadderOp::Annihilate: return apply_annihilate(state);
        case LadderOp::AC: return apply_ac(state);
        case LadderOp::CA: return apply_ca(state);
        }
    }
    return apply_pipeline(state, {op, k});
}

// ---- dense number-basis oracle (criterion 9 only) -------------------------

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Mat annihilation_matrix(std::size_t n_dim)
{
    Mat a = Mat::Zero(static_cast<Eigen::Index>(n_dim), static_cast<Eigen::Index>(n_dim));
    for (std::size_t i = 0; i + 1 < n_dim; ++i) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) =
            std::sqrt(static_cast<double>(i + 1));
    }
    return a;
}

Mat dense_op(LadderOp op, unsigned k, std::size_t n_dim)
{
    const Mat a = annihilation_matrix(n_dim);
    const Mat ad = a.adjoint();
    Mat base;
    switch (op) {
    case LadderOp::Create: base = ad; break;
    case LadderOp::Annihilate: base = a; break;
    case LadderOp::AC: base = ad * a; break;
    case LadderOp::CA: base = a * ad; break;
    }
    Mat out = Mat::Identity(base.rows(), base.cols());
    for (unsigned i = 0; i < k; ++i) {
        out = base * out;
    }
    return out;
}

Vec padded(const std::vector<Complex>& amps, std::size_t n_dim)
{
    Vec v = Vec::Zero(static_cast<Eigen::Index>(n_dim));
    for (std::size_t i = 0; i < amps.size() && i < n_dim; ++i) {
        v(static_cast<Eigen::Index>(i)) = amps[i];
    }
    return v;
}

std::vector<Complex> dense_apply_pure(const std::vector<Complex>& amps, LadderOp op, unsigned k,
                                      std::size_t n_dim)
{
    Vec v = dense_op(op, k, n_dim) * padded(amps, n_dim);
    const double norm = v.norm();
    v /= norm;
    return {v.data(), v.data() + v.size()};
}

std::vector<double> dense_apply_diag(const std::vector<double>& weights, LadderOp op, unsigned k,
                                     std::size_t n_dim)
{
    Mat rho = Mat::Zero(static_cast<Eigen::Index>(n_dim), static_cast<Eigen::Index>(n_dim));
    for (std::size_t i = 0; i < weights.size() && i < n_dim; ++i) {
        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = weights[i];
    }
    const Mat m = dense_op(op, k, n_dim);
    Mat out = m * rho * m.adjoint();
    out /= out.trace();
    std::vector<double> diag(n_dim);
    for (std::size_t i = 0; i < n_dim; ++i) {
        diag[i] = out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    return diag;
}

Mat hermitian_sqrt(const Mat& m)
{
    Eigen::SelfAdjointEigenSolver<Mat> solver(m);
    Eigen::VectorXd vals = solver.eigenvalues().cwiseMax(0.0);
    return solver.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
           solver.eigenvectors().adjoint();
}

double dense_uhlmann(const std::vector<double>& p, const std::vector<double>& q)
{
    const std::size_t n_dim = std::max(p.size(), q.size());
    Mat rho = Mat::Zero(static_cast<Eigen::Index>(n_dim), static_cast<Eigen::Index>(n_dim));
    Mat sigma = rho;
    for (std::size_t i = 0; i < p.size(); ++i) {
        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = q[i];
    }
    const Mat root = hermitian_sqrt(rho);
    Eigen::SelfAdjointEigenSolver<Mat> solver(root * sigma * root);
    const Eigen::VectorXd vals = solver.eigenvalues().cwiseMax(0.0);
    const double trace_root = vals.cwiseSqrt().sum();
    return trace_root * trace_root;
}

double max_abs_pure_diff(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    double worst = 0.0;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Complex va = i < a.size() ? a[i] : Complex{0.0, 0.0};
        const Complex vb = i < b.size() ? b[i] : Complex{0.0, 0.0};
        worst = std::max(worst, std::abs(va - vb));
    }
    return worst;
}

double max_abs_diag_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double worst = 0.0;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double va = i < a.size() ? a[i] : 0.0;
        const double vb = i < b.size() ? b[i] : 0.0;
        worst = std::max(worst, std::abs(va - vb));
    }
    return worst;
}

// ---- randomized states (criterion 10) --------------------------------------

FieldState random_pure(std::mt19937& rng)
{
    std::uniform_int_distribution<std::size_t> dim_dist(2, 48);
    std::normal_distribution<double> gauss(0.0, 1.0);
    PureState s;
    s.amplitudes.resize(dim_dist(rng));
    for (auto& c : s.amplitudes) {
        c = Complex{gauss(rng), gauss(rng)};
    }
    return normalize(FieldState{std::move(s)}).state;
}

FieldState random_diagonal(std::mt19937& rng)
{
    std::uniform_int_distribution<std::size_t> dim_dist(2, 48);
    std::normal_distribution<double> gauss(0.0, 1.0);
    DiagonalState s;
    s.weights.resize(dim_dist(rng));
    for (auto& w : s.weights) {
        const double g = gauss(rng);
        w = g * g;
    }
    return normalize(FieldState{std::move(s)}).state;
}

// ---- criteria ---------------------------------------------------------------

CriterionResult criterion1()
{
    CriterionBuilder c(1, "thermal AC goes sub-Poissonian near nbar = 0.6; CA never does");
    const double root = find_q_zero({QZeroFamily::ThermalAC, 1}, 0.3, 1.0);
    c.check_in("Q_AC root", root, 0.55, 0.65);
    c.check_lt("Q_AC(nbar=0.5)", q_of(apply_ac(make_thermal({0.5}))), 0.0);
    c.check_gt("Q_AC(nbar=0.7)", q_of(apply_ac(make_thermal({0.7}))), 0.0);
    double min_qca = 1e300;
    for (int i = 1; i <= 100; ++i) {
        const double nbar = 0.05 * i;
        min_qca = std::min(min_qca, q_of(apply_ca(make_thermal({nbar}))));
    }
    c.check_gt("min Q_CA over nbar in [0.05, 5]", min_qca, 0.0);
    return c.finish();
}

CriterionResult criterion2()
{
    CriterionBuilder c(2, "20-fold AC stays sub-Poissonian up to nbar near 0.57, below CA");
    const double root = find_q_zero({QZeroFamily::ThermalAC, 20}, 0.3, 1.0);
    c.check_in("Q_AC^20 root", root, 0.55, 0.59);
    double worst_gap = -1e300;
    for (int i = 1; i <= 40; ++i) {
        const double nbar = 0.05 * i;
        const FieldState base = make_thermal({nbar});
        const double qac = q_of(apply_pipeline(base, {LadderOp::AC, 20}));
        const double qca = q_of(apply_pipeline(base, {LadderOp::CA, 20}));
        worst_gap = std::max(worst_gap, qac - qca);
    }
    c.check_le("max (Q_AC^20 - Q_CA^20) over grid", worst_gap, 0.0);
    return c.finish();
}

CriterionResult criterion3()
{
    CriterionBuilder c(3, "closed-form AC/CA moment identities and numeric agreement");
    double worst_mean_identity = 0.0;
    double worst_var_identity = 0.0;
    double worst_numeric = 0.0;
    for (unsigned k = 1; k <= 20; ++k) {
        for (double nbar : {0.1, 0.57, 1.0, 2.0}) {
            const ThermalMoments ac = thermal_ack_moments(nbar, k);
            const ThermalMoments ca = thermal_cak_moments(nbar, k);
            worst_mean_identity =
                std::max(worst_mean_identity, std::abs(ac.mean - ca.mean - 1.0));
            worst_var_identity =
                std::max(worst_var_identity, std::abs(ac.variance - ca.variance));

            const FieldState base = make_thermal({nbar});
            const MomentSummary num_ac = moments(apply_pipeline(base, {LadderOp::AC, k}));
            const MomentSummary num_ca = moments(apply_pipeline(base, {LadderOp::CA, k}));
            worst_numeric = std::max({worst_numeric, std::abs(num_ac.mean - ac.mean),
                                      std::abs(num_ac.variance - ac.variance),
                                      std::abs(num_ca.mean - ca.mean),
                                      std::abs(num_ca.variance - ca.variance)});
        }
    }
    c.check_abs_le("max |mean_AC - mean_CA - 1|", worst_mean_identity, 1e-12);
    c.check_abs_le("max |var_AC - var_CA|", worst_var_identity, 1e-12);
    c.check_abs_le("max closed-form vs numeric deviation", worst_numeric, 1e-6);
    return c.finish();
}

CriterionResult criterion4()
{
    CriterionBuilder c(4, "Wigner negativity at nbar = 0.57: AC negative near origin, CA not");
    const FieldState base = make_thermal({0.57});
    const FieldState ac = apply_ac(base);
    const FieldState ca = apply_ca(base);
    const WignerGridSpec spec{-3.0, 3.0, -3.0, 3.0, 121};
    const WignerGrid grid_ac = wigner_grid(ac, spec);
    const WignerGrid grid_ca = wigner_grid(ca, spec);
    c.check_lt("min W_AC over grid", grid_ac.min_value, -1e-3);
    c.check_lt("|min W_AC location|", std::hypot(grid_ac.min_x, grid_ac.min_y), 0.5);
    c.check_ge("min W_CA over grid", grid_ca.min_value, -1e-9);
    const double z = 0.57 / 1.57;
    const double closed_form = (2.0 / kPi) * polylog_neg(2, -z) / polylog_neg(2, z);
    c.check_abs_le("W_AC(0) vs closed form", wigner_at(ac, Complex{0.0, 0.0}) - closed_form,
                   1e-9);
    return c.finish();
}

CriterionResult criterion5()
{
    CriterionBuilder c(5, "coherent AC/CA both sub-Poissonian, AC stronger");
    double max_qac = -1e300;
    double max_qca = -1e300;
    double worst_gap = -1e300;
    for (int i = 1; i <= 40; ++i) {
        const double alpha_sq = 0.05 * i;
        const FieldState base = make_coherent({Complex{std::sqrt(alpha_sq), 0.0}});
        const double qac = q_of(apply_ac(base));
        const double qca = q_of(apply_ca(base));
        max_qac = std::max(max_qac, qac);
        max_qca = std::max(max_qca, qca);
        worst_gap = std::max(worst_gap, qac - qca);
    }
    c.check_lt("max Q_AC over grid", max_qac, 0.0);
    c.check_lt("max Q_CA over grid", max_qca, 0.0);
    c.check_lt("max (Q_AC - Q_CA) over grid", worst_gap, 0.0);
    return c.finish();
}

CriterionResult criterion6()
{
    CriterionBuilder c(6, "AC^k and CA^k approach each other as k grows");
    for (const bool thermal : {true, false}) {
        const char* tag = thermal ? "thermal nbar=0.57" : "coherent |alpha|^2=0.57";
        const FieldState base = thermal
                                    ? make_thermal({0.57})
                                    : make_coherent({Complex{std::sqrt(0.57), 0.0}});
        double prev = -1.0;
        double min_step = 1e300;
        double last = 0.0;
        for (unsigned k = 1; k <= 20; ++k) {
            const double f = fidelity(apply_pipeline(base, {LadderOp::AC, k}),
                                      apply_pipeline(base, {LadderOp::CA, k}));
            min_step = std::min(min_step, f - prev);
            prev = f;
            last = f;
        }
        c.check_gt(std::string("min fidelity increment, ") + tag, min_step, 0.0);
        c.check_gt(std::string("fidelity at k=20, ") + tag, last, 0.99);
    }
    return c.finish();
}

CriterionResult criterion7()
{
    CriterionBuilder c(7, "pi/2 timing: success and fidelity near unity at large |alpha|^2");
    const double grid_hi[] = {100.0};
    const auto hi = fig9_sweep(grid_hi, 1.0, CavityMode::AC);
    c.check_gt("P1 at |alpha|^2=100", hi[0].success_prob, 0.9);
    c.check_gt("F1 at |alpha|^2=100", hi[0].fidelity, 0.9);

    const double grid_lo[] = {0.1, 0.05, 0.01};
    const auto lo = fig9_sweep(grid_lo, 1.0, CavityMode::AC);
    c.check_lt("P1 at |alpha|^2=0.1", lo[0].success_prob, 0.2);
    c.check_lt("P1 decrease toward 0 (0.05 below 0.1)", lo[1].success_prob,
               lo[0].success_prob);
    c.check_lt("P1 decrease toward 0 (0.01 below 0.05)", lo[2].success_prob,
               lo[1].success_prob);

    const double grid_ca[] = {1e-3};
    const auto ca = fig9_sweep(grid_ca, 1.0, CavityMode::CA);
    c.check_abs_le("1 - P2 at |alpha|^2=1e-3", 1.0 - ca[0].success_prob, 1e-3);
    return c.finish();
}

CriterionResult criterion8()
{
    CriterionBuilder c(8, "short-time limit: P proportional to g^4 t1^2 t2^2, fidelity to one");
    const FieldState base = make_coherent({Complex{1.0, 0.0}});
    CavityConfig cfg;
    cfg.g = 1.0;
    cfg.t1 = 1.0;
    cfg.t2 = 1.0;
    cfg.mode = CavityMode::AC;
    const double scales[] = {1e-1, 1e-2, 1e-3, 1e-4};
    const ShortTimeScalingReport report = short_time_scaling_probe(base, cfg, scales);
    c.check_lt("relative spread of P/lambda^4 between 1e-3 and 1e-4",
               report.last_pair_spread, 0.01);
    c.check_gt("realized fidelity at lambda=1e-4",
               report.entries.back().realized_fidelity, 1.0 - 1e-6);
    return c.finish();
}

CriterionResult criterion9()
{
    CriterionBuilder c(9, "dense matrix oracle reproduces every ladder operation");
    std::mt19937 rng(20250809u);
    std::normal_distribution<double> gauss(0.0, 1.0);

    PureState pure;
    pure.amplitudes.resize(8);
    for (auto& a : pure.amplitudes) {
        a = Complex{gauss(rng), gauss(rng)};
    }
    const FieldState psi = normalize(FieldState{std::move(pure)}).state;
    const auto& psi_amps = std::get<PureState>(psi).amplitudes;

    DiagonalState diag;
    diag.weights.resize(8);
    for (auto& w : diag.weights) {
        const double g = gauss(rng);
        w = g * g;
    }
    const FieldState rho = normalize(FieldState{std::move(diag)}).state;
    const auto& rho_weights = std::get<DiagonalState>(rho).weights;

    const std::size_t padded_dim = 16; // room for shifts up to the pipeline depth
    double worst = 0.0;
    const auto compare = [&](LadderOp op, unsigned k) {
        const FieldState lib_pure = apply_lib(psi, op, k);
        worst = std::max(worst,
                         max_abs_pure_diff(std::get<PureState>(lib_pure).amplitudes,
                                           dense_apply_pure(psi_amps, op, k, padded_dim)));
        const FieldState lib_diag = apply_lib(rho, op, k);
        worst = std::max(worst,
                         max_abs_diag_diff(std::get<DiagonalState>(lib_diag).weights,
                                           dense_apply_diag(rho_weights, op, k, padded_dim)));
    };
    for (const LadderOp op : {LadderOp::Create, LadderOp::Annihilate, LadderOp::AC, LadderOp::CA}) {
        compare(op, 1);
        compare(op, 3);
    }
    c.check_abs_le("max |library - dense oracle| across ops", worst, 1e-12);

    double worst_fid = 0.0;
    const FieldState thermal_a = apply_ac(make_thermal({0.8}, 1e-6));
    const FieldState thermal_b = apply_ca(make_thermal({0.8}, 1e-6));
    const double fast = fidelity(thermal_a, thermal_b);
    const double dense = dense_uhlmann(std::get<DiagonalState>(thermal_a).weights,
                                       std::get<DiagonalState>(thermal_b).weights);
    worst_fid = std::abs(fast - dense);
    const double fast_rr = fidelity(rho, rho);
    worst_fid = std::max(worst_fid,
                         std::abs(fast_rr - dense_uhlmann(rho_weights, rho_weights)));
    c.check_abs_le("diagonal fidelity vs dense Uhlmann", worst_fid, 1e-9);
    return c.finish();
}

CriterionResult criterion10()
{
    CriterionBuilder c(10, "operator and phase-space invariants on randomized states");
    std::mt19937 rng(4211u);

    double worst_commutator = 0.0;
    double worst_create_shift = 0.0;
    double worst_annihilate_shift = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const FieldState state = trial % 2 == 0 ? random_pure(rng) : random_diagonal(rng);
        const std::vector<double> w = number_weights(state);
        long double mean = 0.0L, raised = 0.0L;
        for (std::size_t n = 0; n < w.size(); ++n) {
            mean += static_cast<long double>(n) * w[n];
            raised += static_cast<long double>(n + 1) * w[n];
        }
        worst_commutator =
            std::max(worst_commutator, std::abs(static_cast<double>(raised - mean) - 1.0));

        const MomentSummary before = moments(state);
        const MomentSummary created = moments(apply_create(state));
        worst_create_shift = std::max(
            worst_create_shift, std::abs(created.mean - before.mean -
                                         (before.variance / (before.mean + 1.0) + 1.0)));
        if (before.mean > 1e-3) {
            const MomentSummary annihilated = moments(apply_annihilate(state));
            worst_annihilate_shift = std::max(
                worst_annihilate_shift, std::abs(annihilated.mean - before.mean -
                                                 (before.variance / before.mean - 1.0)));
        }
    }
    c.check_abs_le("commutator witness <aa+> - <a+a> - 1", worst_commutator, 1e-9);
    c.check_abs_le("creation moment shift residual", worst_create_shift, 1e-9);
    c.check_abs_le("annihilation moment shift residual", worst_annihilate_shift, 1e-9);

    // Rotational symmetry of diagonal-state Wigner functions.
    const FieldState ac_state = apply_ac(make_thermal({0.57}));
    double worst_sym = 0.0;
    for (const double radius : {0.35, 1.1, 2.4}) {
        const double ref = wigner_at(ac_state, Complex{radius, 0.0});
        for (const double angle : {0.7, 1.9, 3.6, 5.1}) {
            const double v =
                wigner_at(ac_state, Complex{radius * std::cos(angle), radius * std::sin(angle)});
            worst_sym = std::max(worst_sym, std::abs(v - ref));
        }
    }
    c.check_abs_le("diagonal Wigner angular spread", worst_sym, 1e-10);

    const WignerGridSpec spec{-3.0, 3.0, -3.0, 3.0, 121};
    const double vac_quad = wigner_grid(make_number(0), spec).quadrature();
    c.check_abs_le("vacuum Wigner quadrature - 1", vac_quad - 1.0, 1e-3);
    const WignerGridSpec wide{-6.0, 6.0, -6.0, 6.0, 161};
    const double ac_quad = wigner_grid(ac_state, wide).quadrature();
    c.check_abs_le("thermal-AC Wigner quadrature - 1", ac_quad - 1.0, 1e-3);
    return c.finish();
}

} // namespace

AcceptanceReport run_acceptance()
{
    AcceptanceReport report;
    report.criteria.push_back(criterion1());
    report.criteria.push_back(criterion2());
    report.criteria.push_back(criterion3());
    report.criteria.push_back(criterion4());
    report.criteria.push_back(criterion5());
    report.criteria.push_back(criterion6());
    report.criteria.push_back(criterion7());
    report.criteria.push_back(criterion8());
    report.criteria.push_back(criterion9());
    report.criteria.push_back(criterion10());
    report.all_passed = true;
    for (const auto& criterion : report.criteria) {
        report.all_passed = report.all_passed && criterion.passed;
    }
    return report;
}

std::string acceptance_report_json(const AcceptanceReport& report)
{
    nlohmann::ordered_json j;
    j["all_passed"] = report.all_passed;
    auto criteria = nlohmann::ordered_json::array();
    for (const auto& criterion : report.criteria) {
        nlohmann::ordered_json jc;
        jc["id"] = criterion.id;
        jc["title"] = criterion.title;
        jc["passed"] = criterion.passed;
        auto checks = nlohmann::ordered_json::array();
        for (const auto& check : criterion.checks) {
            nlohmann::ordered_json ck;
            ck["label"] = check.label;
            ck["measured"] = check.measured;
            ck["comparator"] = check.comparator;
            ck["limit"] = check.limit;
            ck["passed"] = check.passed;
            checks.push_back(std::move(ck));
        }
        jc["checks"] = std::move(checks);
        criteria.push_back(std::move(jc));
    }
    j["criteria"] = std::move(criteria);
    return j.dump(2);
}

} // namespace fockladder
