#include "cli.hpp"

#include "curvlab/ansatz_family.hpp"
#include "curvlab/coord_geometry.hpp"
#include "curvlab/curvature_model.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/product_model.hpp"
#include "curvlab/ricci.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

namespace curvlab::cli {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<std::string, long, double, bool>;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Check {
    std::string name;
    bool passed = false;
    Cell value;
};

struct Report {
    std::string command;
    json params = json::object();
    std::vector<Check> checks;
    std::optional<Table> table;  // emitted in CSV mode instead of the checks
    json extra = json::object();

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    void check(std::string name, bool passed, Cell value) { checks.push_back({std::move(name), passed, std::move(value)}); }
};

std::string decimal(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string short_decimal(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string csv_field(const Cell& cell) {
    std::string s;
    if (const auto* str = std::get_if<std::string>(&cell)) s = *str;
    else if (const auto* l = std::get_if<long>(&cell)) s = std::to_string(*l);
    else if (const auto* d = std::get_if<double>(&cell)) s = decimal(*d);
    else s = std::get<bool>(cell) ? "true" : "false";
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (const char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

json json_value(const Cell& cell) {
    if (const auto* str = std::get_if<std::string>(&cell)) return *str;
    if (const auto* l = std::get_if<long>(&cell)) return *l;
    if (const auto* d = std::get_if<double>(&cell)) return std::isfinite(*d) ? json(*d) : json(nullptr);
    return std::get<bool>(cell);
}

void write_csv_row(std::ostream& os, const std::vector<Cell>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
}

void write_csv(std::ostream& os, const Report& rep) {
    if (rep.table) {
        std::vector<Cell> header(rep.table->columns.begin(), rep.table->columns.end());
        write_csv_row(os, header);
        for (const auto& row : rep.table->rows) write_csv_row(os, row);
        return;
    }
    write_csv_row(os, {std::string("check"), std::string("passed"), std::string("value")});
    for (const auto& c : rep.checks) write_csv_row(os, {c.name, c.passed, c.value});
}

void write_json(std::ostream& os, const Report& rep) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = rep.command;
    doc["params"] = rep.params;
    doc["passed"] = rep.passed();
    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", json_value(c.value)}});
    doc["checks"] = checks;
    if (rep.table) {
        json rows = json::array();
        for (const auto& row : rep.table->rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[rep.table->columns[i]] = json_value(row[i]);
            rows.push_back(obj);
        }
        doc["columns"] = rep.table->columns;
        doc["rows"] = rows;
    }
    for (const auto& [key, value] : rep.extra.items()) doc[key] = value;
    os << doc.dump(2) << '\n';
}

// Exact value followed by its decimal column.
void push_exact(std::vector<Cell>& row, const Rational& x) {
    row.emplace_back(x.str());
    row.emplace_back(x.to_double());
}

void push_exact_columns(std::vector<std::string>& cols, std::initializer_list<const char*> names) {
    for (const char* n : names) {
        cols.emplace_back(n);
        cols.emplace_back(std::string(n) + "_dec");
    }
}

struct FamilyOptions {
    int n = 2;
    int k = 1;
    std::string t1 = "-1";
    std::string grid;
};

struct Globals {
    std::string format;
    std::string out;
    std::uint64_t seed = kDefaultSeed;
};

Rational parse_rational(const std::string& text, const char* what) {
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

PhiFamily make_family(const FamilyOptions& o) {
    if (o.k == 0)
        throw UsageError("k = 0 is the untwisted case, which the Ansatz family does not cover; use the `conformal` command");
    FamilyParams p{o.n, o.k, parse_rational(o.t1, "--t1")};
    try {
        return build_phi(p);
    } catch (const ArgumentError& e) {
        throw UsageError(e.what());
    } catch (const DegenerateAnsatz& e) {
        throw UsageError(e.what());
    }
}

json family_json(const FamilyOptions& o) {
    return {{"n", o.n}, {"k", o.k}, {"t1", parse_rational(o.t1, "--t1").str()}};
}

/// "a:b:count" -> count points from a to b inclusive, exact.
std::vector<Rational> make_grid(const std::string& spec, const PhiFamily& family) {
    if (spec.empty()) return default_grid(family);
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("--grid expects a:b:count");
    const Rational a = parse_rational(parts[0], "--grid"), b = parse_rational(parts[1], "--grid");
    long count = 0;
    try {
        count = std::stol(parts[2]);
    } catch (const std::exception&) {
        throw UsageError("--grid count must be an integer");
    }
    if (count < 1 || count > 100000) throw UsageError("--grid count must lie in [1, 100000]");
    if (count == 1) return {a};
    std::vector<Rational> grid;
    for (long i = 0; i < count; ++i) grid.push_back(a + (b - a) * Rational(i, count - 1));
    return grid;
}

void require_domain(const PhiFamily& family, const std::vector<Rational>& grid, bool strict) {
    for (const auto& u : grid)
        if (strict ? u <= family.u_min() : u < family.u_min())
            throw UsageError("grid point " + u.str() + (strict ? " is not above" : " is below") + " U_min = " +
                             family.u_min().str());
}

// --------------------------------------------------------------------------

Report cmd_verify(const FamilyOptions& o, bool perturb) {
    const PhiFamily family = make_family(o);
    const auto grid = make_grid(o.grid, family);
    require_domain(family, grid, true);

    Report rep;
    rep.command = "verify";
    rep.params = family_json(o);
    rep.params["grid_points"] = grid.size();
    rep.params["perturb"] = perturb;

    const ConditionReport cond = check_conditions(family, grid);
    const long pts = static_cast<long>(cond.grid_points);
    rep.check("phi_positive", cond.phi_positive, pts);
    rep.check("v_positive", cond.v_positive, pts);
    rep.check("phi_second_derivative_identity", cond.phi_second_derivative_identity, pts);
    rep.check("antiderivative_identity", cond.antiderivative_identity, pts);
    rep.check("gap_identity", cond.gap_identity, pts);
    rep.check("gap_negative", cond.gap_negative, pts);
    rep.check("equality_form_identity", cond.equality_form_identity, pts);
    rep.check("equality_form_sign", cond.equality_form_sign, pts);

    AnsatzCoefficients coeffs = derive_coefficients(family.params());
    if (perturb) coeffs.c += Rational(1);
    const RationalFunction residual = psieq_residual(family.params(), coeffs);
    rep.check("ode_residual_zero", residual.is_zero(), residual.str());

    const RationalFunction disc = components_closed_forms(family).discriminant();
    rep.check("discriminant_identity", disc.is_zero(), disc.str());

    std::optional<Rational> worst;
    for (const auto& u : grid) {
        const Rational r = ricci_at_null_direction(family, u);
        if (!worst || r < *worst) worst = r;
    }
    rep.check("ricci_at_null_positive", worst->sign() > 0, worst->str());

    rep.extra["coefficients"] = {{"a", coeffs.a.str()}, {"b", coeffs.b.str()}, {"c", coeffs.c.str()}, {"d", coeffs.d.str()}};
    return rep;
}

Report cmd_curvature(const FamilyOptions& o) {
    const PhiFamily family = make_family(o);
    const auto grid = make_grid(o.grid, family);
    require_domain(family, grid, false);

    Table t;
    push_exact_columns(t.columns, {"U", "A", "B", "C", "discriminant", "s_star", "lambda0", "lambda1"});
    t.rows.resize(grid.size());
    std::vector<char> disc_zero(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const auto c = components(family, grid[i]);
        const Rational disc = Rational(16) * c.B * c.B - Rational(4) * c.A * c.C;
        const auto cls = classify(c);
        const auto spec = ricci_eigenvalues(family, grid[i]);
        auto& row = t.rows[i];
        for (const Rational* x : {&grid[i], &c.A, &c.B, &c.C, &disc}) push_exact(row, *x);
        if (cls.null_split) push_exact(row, *cls.null_split);
        else row.insert(row.end(), {std::string(), std::string()});
        push_exact(row, spec.lambda0);
        push_exact(row, spec.lambda1);
        disc_zero[i] = disc.is_zero();
    });

    Report rep;
    rep.command = "curvature";
    rep.params = family_json(o);
    rep.params["grid_points"] = grid.size();
    long bad = 0;
    for (const char z : disc_zero) bad += !z;
    rep.check("discriminant_zero", bad == 0, bad);
    rep.table = std::move(t);
    return rep;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

Report cmd_ricci(const FamilyOptions& o, int kappa) {
    const PhiFamily family = make_family(o);
    const int n = family.params().n;
    if (kappa != 0 && (kappa < 1 || kappa > n)) throw UsageError("--kappa must lie in [1, n]");
    const auto grid = make_grid(o.grid, family);
    require_domain(family, grid, false);

    std::vector<int> kappas;
    for (int q = 1; q <= n; ++q)
        if (kappa == 0 || q == kappa) kappas.push_back(q);
    std::vector<char> global(kappas.size());
    for (std::size_t j = 0; j < kappas.size(); ++j) global[j] = K_global(family.params(), kappas[j]);

    Table t;
    push_exact_columns(t.columns, {"U", "lambda0", "lambda1", "scalar"});
    for (const char* c : {"kappa_set", "kappa", "kappa_positive", "K_global"}) t.columns.emplace_back(c);

    long violations = 0;
    for (const auto& u : grid) {
        const RicciSpectrum spec = ricci_eigenvalues(family, u);
        const std::string set = join(kappa_set(spec));
        for (std::size_t j = 0; j < kappas.size(); ++j) {
            const bool pos = kappa_positive(spec, n, kappas[j]);
            if (global[j] && !pos) ++violations;
            std::vector<Cell> row;
            push_exact(row, u);
            push_exact(row, spec.lambda0);
            push_exact(row, spec.lambda1);
            push_exact(row, scalar_curvature(spec));
            row.insert(row.end(), {set, static_cast<long>(kappas[j]), pos, static_cast<bool>(global[j])});
            t.rows.push_back(std::move(row));
        }
    }

    Report rep;
    rep.command = "ricci";
    rep.params = family_json(o);
    rep.params["grid_points"] = grid.size();
    rep.params["kappa"] = kappa == 0 ? json(nullptr) : json(kappa);
    rep.check("K_global_implies_pointwise", violations == 0, violations);
    json verdicts = json::object();
    for (std::size_t j = 0; j < kappas.size(); ++j) verdicts[std::to_string(kappas[j])] = static_cast<bool>(global[j]);
    rep.extra["K_global"] = verdicts;
    if (kappa == 0) rep.extra["kappa_prime"] = kappa_prime(family.params());
    rep.table = std::move(t);
    return rep;
}

const char* branch_name(int n, int k) {
    if (k == 1) return "k=1";
    return n >= k + 1 ? "n>k" : "n<=k";
}

Report cmd_kappa_table(int n_max, int k_max, const std::string& t1) {
    if (n_max < 2 || k_max < 1) throw UsageError("kappa-table needs --n-max >= 2 and --k-max >= 1");
    const Rational t = parse_rational(t1, "--t1");
    if (t.sign() >= 0) throw UsageError("--t1 must be negative");

    struct Cellout {
        int brute = 0, closed = 0;
    };
    const std::size_t nk = static_cast<std::size_t>(k_max);
    std::vector<Cellout> cells(static_cast<std::size_t>(n_max - 1) * nk);
    parallel_for(cells.size(), [&](std::size_t i) {
        const int n = 2 + static_cast<int>(i / nk), k = 1 + static_cast<int>(i % nk);
        cells[i] = {kappa_prime(FamilyParams{n, k, t}), kappa_prime_closed(n, k)};
    });

    Table tab;
    tab.columns = {"n", "k", "branch", "kappa_prime", "kappa_prime_closed", "mismatch"};
    long mismatches = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const int n = 2 + static_cast<int>(i / nk), k = 1 + static_cast<int>(i % nk);
        const bool mismatch = cells[i].brute != cells[i].closed;
        mismatches += mismatch;
        tab.rows.push_back({static_cast<long>(n), static_cast<long>(k), std::string(branch_name(n, k)),
                            static_cast<long>(cells[i].brute), static_cast<long>(cells[i].closed), mismatch});
    }

    Report rep;
    rep.command = "kappa-table";
    rep.params = {{"n_max", n_max}, {"k_max", k_max}, {"t1", t.str()}};
    rep.check("closed_form_agrees", mismatches == 0, mismatches);
    rep.table = std::move(tab);
    return rep;
}

Report cmd_oracle(const FamilyOptions& o, const std::string& u_text, double step, int levels) {
    if (o.n != 2) throw UsageError("oracle supports n = 2 only");
    const PhiFamily family = make_family(o);
    const Rational u = u_text.empty() ? family.u_min() + Rational(2) : parse_rational(u_text, "--u");
    if (u <= family.u_min()) throw UsageError("--u must lie above U_min = " + family.u_min().str());
    if (!(step > 0.0) || levels < 1) throw UsageError("--step must be positive and --richardson at least 1");

    const OracleReport r = oracle_compare(family, u, FDConfig{step, levels});
    const double tol = u - family.u_min() <= Rational(1, 2) ? 1e-5 : 1e-6;

    Report rep;
    rep.command = "oracle";
    rep.params = family_json(o);
    rep.params["u"] = u.str();
    rep.params["step"] = step;
    rep.params["richardson"] = levels;
    rep.params["tolerance"] = tol;
    rep.check("rel_error_A", r.rel_error_A <= tol, r.rel_error_A);
    rep.check("rel_error_B", r.rel_error_B <= tol, r.rel_error_B);
    rep.check("rel_error_C", r.rel_error_C <= tol, r.rel_error_C);
    rep.check("det_residual", r.det_residual <= 1e-8, r.det_residual);
    rep.check("kahler_defect", r.kahler_defect <= 1e-7, r.kahler_defect);
    rep.extra["fd"] = {{"A", r.A}, {"B", r.B}, {"C", r.C}, {"estimated_error", r.estimated_error}};
    rep.extra["exact"] = {{"A", r.A_exact}, {"B", r.B_exact}, {"C", r.C_exact}};
    rep.extra["metric"] = {{"g00", r.g00}, {"g11", r.g11}, {"g10_abs", r.g10_abs}};
    return rep;
}

Report cmd_conformal(std::vector<double> r_grid, std::optional<double> exponent, std::uint64_t seed) {
    if (r_grid.empty())
        for (const real r : standard_r_grid()) r_grid.push_back(static_cast<double>(r));
    for (const double r : r_grid)
        if (!(r > 0.0)) throw UsageError("--r-grid values must be positive");
    const ConformalFactor factor = exponent ? perturbed_factor(*exponent) : ConformalFactor{};

    Report rep;
    rep.command = "conformal";
    rep.params["r_grid"] = r_grid;
    rep.params["exponent"] = static_cast<double>(factor.exponent);
    rep.params["seed"] = seed;

    for (const double r : r_grid) {
        const double res = static_cast<double>(std::fabs(conformal_ode_residual(static_cast<real>(r), factor)));
        rep.check("ode_residual r=" + short_decimal(r), res <= 1e-10, res);
    }

    const auto grid = standard_conformal_grid();
    const ConformalReport cr = conformal_curvature_checks(grid, FDConfig{}, 1000, seed);
    json points = json::array();
    for (std::size_t i = 0; i < cr.points.size(); ++i) {
        const auto& p = cr.points[i];
        rep.check("discriminant_residual point " + std::to_string(i), p.ok, p.discriminant_residual);
        json z = json::array();
        for (int j = 0; j < p.point.size(); ++j)
            z.push_back({static_cast<double>(p.point[j].real()), static_cast<double>(p.point[j].imag())});
        points.push_back({{"z", z},
                          {"R1111", p.R1111},
                          {"R1122", p.R1122},
                          {"R2222", p.R2222},
                          {"discriminant_residual", p.discriminant_residual},
                          {"min_hsc", p.min_hsc},
                          {"estimated_error", p.estimated_error}});
    }
    rep.extra["points"] = points;

    Point half(2);
    half << cplx(0.5L), cplx(0.5L);
    const double defect = kahler_defect(conformal_field(), half);
    rep.check("kahler_defect_witness", defect >= 0.1, defect);

    bool both_finite = false;
    json sweep = json::array();
    for (const real cc : {-2.0L, -1.0L, -0.5L, 0.0L, 0.5L, 1.0L, kConformalExponent, 2.0L, 3.0L, 5.0L}) {
        const auto [at0, atinf] = boundary_behavior(cc);
        both_finite = both_finite || (at0 == Limit::FiniteNonzero && atinf == Limit::FiniteNonzero);
        sweep.push_back({{"cc", static_cast<double>(cc)}, {"r_to_0", to_string(at0)}, {"r_to_inf", to_string(atinf)}});
    }
    rep.check("boundary_not_both_finite", !both_finite, static_cast<long>(sweep.size()));
    rep.extra["boundary"] = sweep;
    return rep;
}

Report cmd_product(int dim, int samples, std::uint64_t seed) {
    if (dim < 2) throw UsageError("--dim must be at least 2");
    if (samples < 1) throw UsageError("--samples must be positive");
    const TheoremProduct tp = theorem_product(dim);

    Report rep;
    rep.command = "product";
    rep.params = {{"dim", dim}, {"samples", samples}, {"seed", seed}};

    const int rank = product_rank(tp.factors);
    rep.check("rank", rank == tp.expected_rank, static_cast<long>(rank));

    const NullSpanReport ns = null_span_check(tp.factors, samples, seed);
    rep.check("null_span_max", ns.max_null_value <= 1e-12, ns.max_null_value);
    rep.check("generic_nonnegative", ns.min_generic_value >= 0.0, ns.min_generic_value);
    rep.check("bounded_away", ns.min_bounded_value >= ns.bounded_threshold * (1.0 - 1e-12), ns.min_bounded_value);

    const std::vector<FactorModel> pair{m2_factor(), ConstantFactor{1.0, 1}};
    const std::vector<VectorBlock> blocks{{0.5, 1.0}, {0.5, 0.0}};
    const double gap = naive_hsc_sum(pair, blocks) - product_hsc(pair, blocks);
    rep.check("naive_sum_differs", std::fabs(gap) >= 0.1, gap);

    json factors = json::array();
    for (const auto& f : tp.factors)
        factors.push_back(std::holds_alternative<AnsatzFactor>(f) ? json{{"kind", "ansatz"}, {"dim", factor_dim(f)}}
                                                                  : json{{"kind", "constant"}, {"dim", factor_dim(f)}});
    rep.extra["factors"] = factors;
    rep.extra["expected_rank"] = tp.expected_rank;
    rep.extra["bounded_threshold"] = ns.bounded_threshold;
    return rep;
}

void add_family_options(CLI::App* sub, FamilyOptions& o, bool with_grid) {
    sub->add_option("--n", o.n, "complex dimension")->capture_default_str();
    sub->add_option("--k", o.k, "twist degree")->capture_default_str();
    sub->add_option("--t1", o.t1, "family parameter t1 < 0 (rational)")->capture_default_str();
    if (with_grid) sub->add_option("--grid", o.grid, "U grid a:b:count (default: log-spaced above U_min)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Curvature checks for U(n)-invariant Kähler metrics on O(-k) over P^{n-1}", "curvlab"};
    app.require_subcommand(1, 1);

    Globals g;
    const auto add_globals = [&g](CLI::App* sub, const char* default_format) {
        sub->add_option("--format", g.format, std::string("csv or json (default ") + default_format + ")")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", g.out, "write the report to FILE instead of standard output");
        sub->add_option("--seed", g.seed, "random seed")->capture_default_str();
    };

    FamilyOptions fam;
    bool perturb = false;
    int kappa = 0;
    int n_max = 8, k_max = 3;
    std::string u_text;
    double step = 1e-3;
    int levels = 3;
    std::vector<double> r_grid;
    std::optional<double> exponent;
    int dim = 4, samples = 1000;

    auto* verify = app.add_subcommand("verify", "conditions, ODE residual, discriminant and Ricci checks");
    add_family_options(verify, fam, true);
    verify->add_flag("--perturb", perturb, "negative control: perturb one Ansatz coefficient");
    add_globals(verify, "json");

    auto* curvature = app.add_subcommand("curvature", "curvature components table");
    add_family_options(curvature, fam, true);
    add_globals(curvature, "csv");

    auto* ricci = app.add_subcommand("ricci", "Ricci eigenvalues and kappa-positivity");
    add_family_options(ricci, fam, true);
    ricci->add_option("--kappa", kappa, "restrict to one kappa");
    add_globals(ricci, "csv");

    auto* table = app.add_subcommand("kappa-table", "minimal kappa, brute force against the closed form");
    table->add_option("--n-max", n_max)->capture_default_str();
    table->add_option("--k-max", k_max)->capture_default_str();
    table->add_option("--t1", fam.t1)->capture_default_str();
    add_globals(table, "csv");

    auto* oracle = app.add_subcommand("oracle", "finite-difference curvature against the closed forms (n = 2)");
    add_family_options(oracle, fam, false);
    oracle->add_option("--u", u_text, "moment coordinate U (default U_min + 2)");
    oracle->add_option("--step", step, "base finite-difference step")->capture_default_str();
    oracle->add_option("--richardson", levels, "Richardson levels")->capture_default_str();
    add_globals(oracle, "json");

    auto* conformal = app.add_subcommand("conformal", "conformal product metric on P^1 x C");
    conformal->add_option("--r-grid", r_grid, "comma-separated r values")->delimiter(',');
    conformal->add_option("--exponent", exponent, "negative control: replace the exponent 4(sqrt2-1)");
    add_globals(conformal, "json");

    auto* product = app.add_subcommand("product", "products of M2 and the projective line");
    product->add_option("--dim", dim)->capture_default_str();
    product->add_option("--samples", samples)->capture_default_str();
    add_globals(product, "json");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsageError;
    }

    Report rep;
    std::string default_format = "json";
    try {
        if (verify->parsed()) {
            rep = cmd_verify(fam, perturb);
        } else if (curvature->parsed()) {
            rep = cmd_curvature(fam);
            default_format = "csv";
        } else if (ricci->parsed()) {
            rep = cmd_ricci(fam, kappa);
            default_format = "csv";
        } else if (table->parsed()) {
            rep = cmd_kappa_table(n_max, k_max, fam.t1);
            default_format = "csv";
        } else if (oracle->parsed()) {
            rep = cmd_oracle(fam, u_text, step, levels);
        } else if (conformal->parsed()) {
            rep = cmd_conformal(r_grid, exponent, g.seed);
        } else {
            rep = cmd_product(dim, samples, g.seed);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "check failed: " << e.what() << '\n';
        return kCheckFailed;
    }

    const std::string format = g.format.empty() ? default_format : g.format;
    std::ofstream file;
    if (!g.out.empty()) {
        file.open(g.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot open " << g.out << " for writing\n";
            return kUsageError;
        }
    }
    std::ostream& sink = g.out.empty() ? out : file;
    if (format == "csv") write_csv(sink, rep);
    else write_json(sink, rep);
    sink.flush();

    if (rep.passed()) return kPass;
    for (const auto& c : rep.checks)
        if (!c.passed) err << "FAILED " << c.name << " (" << csv_field(c.value) << ")\n";
    return kCheckFailed;
}

}  // namespace curvlab::cli
