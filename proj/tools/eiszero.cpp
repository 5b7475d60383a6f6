#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eiszero/report.hpp"

using namespace eiszero;
using nlohmann::json;

namespace {

struct RunConfig {
    double eps = 1e-14;
    int oversample = 16;
    std::string format = "csv";
    std::string out;
    int jobs = 0;

    ScanOptions scan_options() const
    {
        ScanOptions o;
        o.eps = eps;
        o.oversample = oversample;
        return o;
    }
};

// Output goes to --out when given, otherwise stdout.
class Sink {
public:
    explicit Sink(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw std::runtime_error("cannot open " + path + " for writing");
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::complex<double> parse_complex(std::string s)
{
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    static const std::regex num(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
    auto to_d = [&](const std::string& t) {
        if (!std::regex_match(t, num))
            throw std::invalid_argument("cannot parse number '" + t + "'");
        return std::stod(t);
    };
    if (s.empty())
        throw std::invalid_argument("empty complex number");
    if (s.back() != 'i')
        return {to_d(s), 0.0};
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    auto imag = [&](const std::string& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return to_d(t);
    };
    if (split == std::string::npos)
        return {0.0, imag(s)};
    return {to_d(s.substr(0, split)), imag(s.substr(split))};
}

// "a..b" or a single integer.
std::pair<int, int> parse_range(const std::string& s)
{
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("cannot parse range '" + s + "'");
    }
}

std::string fmt(double v)
{
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

// ---- eval ----

struct EvalRow {
    std::string method;
    std::complex<double> value;
    double error = 0.0;
    std::string regime;
    double envelope = 0.0;
};

int cmd_eval(const RunConfig& cfg, int k, const std::string& zs, const std::string& method)
{
    const std::complex<double> zc = parse_complex(zs);
    const UpperHalfPoint z = UpperHalfPoint::from_complex(zc);
    std::vector<EvalRow> rows;
    const bool all = method == "all";
    if (all || method == "lattice") {
        const LatticeValue v = eval_ek_lattice(k, z, cfg.eps);
        rows.push_back({"lattice", v.value, v.tail_bound, "lattice-exact", 0.0});
    }
    if (all || method == "fourier") {
        if (z.y >= 1)
            rows.push_back({"fourier", eval_ek_fourier(k, z), 0.0, "fourier-exact", 0.0});
        else if (!all)
            throw std::invalid_argument("fourier evaluation needs y >= 1");
    }
    if (all || method == "theta") {
        // theta sum for G_k, with the mid-regime envelope; E_k = 1 + G_k / z^k
        const std::complex<double> g = jacobi_theta(ThetaArgs::for_eisenstein(k, z));
        const std::complex<double> ek = 1.0 + g * std::exp(-static_cast<double>(k) * std::log(zc));
        rows.push_back({"theta", ek, 0.0, to_string(Regime::ThetaMid), kEnvelopeConstant * z.y / std::pow(k, 2.0 / 3)});
    }
    double spread = 0.0;
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = i + 1; j < rows.size(); ++j)
            spread = std::max(spread, std::abs(rows[i].value - rows[j].value));

    Sink sink(cfg.out);
    std::ostream& os = sink.os();
    if (cfg.format == "json") {
        for (const auto& r : rows)
            os << json{{"method", r.method}, {"k", k}, {"re", r.value.real()}, {"im", r.value.imag()}, {"error", r.error},
                       {"regime", r.regime}, {"envelope", r.envelope}}
                      .dump()
               << '\n';
        if (rows.size() > 1)
            os << json{{"max_pairwise_deviation", spread}}.dump() << '\n';
    } else {
        os << "method,k,re,im,error,regime,envelope\n";
        for (const auto& r : rows)
            os << r.method << ',' << k << ',' << fmt(r.value.real()) << ',' << fmt(r.value.imag()) << ','
               << fmt(r.error) << ',' << r.regime << ',' << fmt(r.envelope) << '\n';
        if (rows.size() > 1)
            std::cerr << "max pairwise deviation " << spread << '\n';
    }
    return 0;
}

// ---- table ----

constexpr int kTableKMin = 56, kTableKMax = 84;
constexpr std::array<int, 3> kTableL{20, 22, 24};

// Reference values, rows l = 20, 22, 24 and columns k = 56, 58, ..., 84.
constexpr int kTableA[3][15] = {{3, 3, 3, 3, 4, 3, 4, 4, 4, 4, 5, 4, 5, 5, 5},
                                {2, 3, 2, 3, 3, 3, 3, 4, 3, 4, 4, 4, 4, 4, 4},
                                {2, 2, 3, 2, 3, 3, 3, 3, 4, 3, 4, 4, 4, 4, 5}};
constexpr int kTableB[3][15] = {{2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
                                {3, 2, 3, 3, 2, 3, 3, 2, 3, 3, 2, 3, 3, 3, 3},
                                {3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3}};
constexpr int kTableAminusN[3][15] = {{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                                      {0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0},
                                      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}};

int cmd_table(const RunConfig& cfg, int which)
{
    if (which < 1 || which > 3)
        throw std::invalid_argument("table must be 1, 2 or 3");
    std::vector<WeightPair> pairs;
    for (int l : kTableL)
        for (int k = kTableKMin; k <= kTableKMax; k += 2)
            pairs.push_back(WeightPair::make(k, l));
    ScanOptions opts = cfg.scan_options();
    opts.hunt_interior = false;
    opts.probe_orders = false;
    const auto reports = audit_range_parallel(pairs, opts, cfg.jobs);

    const auto& ref = which == 1 ? kTableA : which == 2 ? kTableB : kTableAminusN;
    std::vector<std::string> diffs;
    Sink sink(cfg.out);
    std::ostream& os = sink.os();
    if (cfg.format == "csv") {
        os << "l";
        for (int k = kTableKMin; k <= kTableKMax; k += 2)
            os << ',' << k;
        os << '\n';
    }
    for (size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        const int row = static_cast<int>(i) / 15, col = static_cast<int>(i) % 15;
        std::string cell;
        std::optional<int> value;
        if (!r.error.empty()) {
            cell = "ERR";
            diffs.push_back("(l=" + std::to_string(r.wp.l) + ", k=" + std::to_string(r.wp.k) + "): " + r.error);
        } else {
            value = which == 1 ? r.A : which == 2 ? r.B : r.A - r.predicted.N_prime;
            cell = std::to_string(*value);
            if (*value != ref[row][col])
                diffs.push_back("(l=" + std::to_string(r.wp.l) + ", k=" + std::to_string(r.wp.k) + "): computed " +
                                cell + ", reference " + std::to_string(ref[row][col]));
        }
        if (cfg.format == "json") {
            os << json{{"table", which}, {"l", r.wp.l}, {"k", r.wp.k}, {"value", value ? json(*value) : json(nullptr)},
                       {"reference", ref[row][col]}, {"error", r.error}}
                      .dump()
               << '\n';
        } else {
            if (col == 0)
                os << r.wp.l;
            os << ',' << cell;
            if (col == 14)
                os << '\n';
        }
    }
    for (const auto& d : diffs)
        std::cerr << "diff " << d << '\n';
    if (!diffs.empty())
        std::cerr << diffs.size() << " cell(s) differ from the reference table\n";
    return diffs.empty() ? 0 : 1;
}

// ---- scan / audit ----

void emit_reports(const RunConfig& cfg, const std::vector<ZeroCountReport>& reports)
{
    Sink sink(cfg.out);
    if (cfg.format == "json")
        write_ndjson(sink.os(), reports);
    else
        write_csv(sink.os(), reports);
}

int finish(const std::vector<ZeroCountReport>& reports)
{
    const RangeSummary s = summarize(reports);
    std::cerr << summary_to_json(s).dump() << '\n';
    return s.failed == 0 ? 0 : 1;
}

int cmd_scan(const RunConfig& cfg, const std::string& lr, const std::string& kr, bool allow_large, bool no_hunt)
{
    const auto [l0, l1] = parse_range(lr);
    const auto [k0, k1] = parse_range(kr);
    const auto pairs = weight_grid(l0, l1, k0, k1);
    if (pairs.empty())
        throw std::invalid_argument("scan: the ranges contain no weight pairs");
    if (!allow_large)
        for (const auto& wp : pairs)
            if (wp.weight() > 400)
                throw std::invalid_argument("scan: k + l exceeds 400; pass --allow-large to proceed");
    ScanOptions opts = cfg.scan_options();
    opts.hunt_interior = !no_hunt;
    const auto reports = audit_range_parallel(pairs, opts, cfg.jobs);
    emit_reports(cfg, reports);
    return finish(reports);
}

int cmd_audit(const RunConfig& cfg, int k, int l)
{
    const WeightPair wp = WeightPair::make(k, l);
    ScanOptions opts = cfg.scan_options();
    opts.parallel_points = true;
    std::vector<ZeroCountReport> reports;
    try {
        reports.push_back(audit(wp, opts));
    } catch (const std::exception& e) {
        ZeroCountReport r;
        r.wp = wp;
        r.error = e.what();
        reports.push_back(r);
    }
    emit_reports(cfg, reports);
    const auto& r = reports.front();
    std::cerr << "(k, l) = (" << k << ", " << l << "): A = " << r.A << ", B = " << r.B << ", valence "
              << (r.valence_ok ? "ok" : "FAILED") << '\n';
    for (const auto& f : r.findings)
        std::cerr << (f.failure ? "failure " : "note ") << f.kind << ": " << f.detail << '\n';
    if (!r.error.empty())
        std::cerr << "error: " << r.error << '\n';
    return r.failed() ? 1 : 0;
}

// ---- plotdata ----

struct Series {
    std::string name;
    double x, y;
};

void emit_series(const RunConfig& cfg, const std::vector<Series>& rows)
{
    Sink sink(cfg.out);
    std::ostream& os = sink.os();
    if (cfg.format == "json") {
        for (const auto& r : rows)
            os << json{{"series", r.name}, {"x", r.x}, {"y", r.y}}.dump() << '\n';
    } else {
        os << "series,x,y\n";
        for (const auto& r : rows)
            os << r.name << ',' << fmt(r.x) << ',' << fmt(r.y) << '\n';
    }
}

int cmd_plotdata(const RunConfig& cfg, const std::string& kind, int k, int l, int points)
{
    if (points < 2)
        throw std::invalid_argument("plotdata: need at least two points");
    std::vector<Series> rows;
    if (kind == "phi") {
        for (int i = 0; i < points; ++i) {
            const double r = 0.05 + (10.0 - 0.05) * i / (points - 1);
            rows.push_back({"phi0", r, phi0(r)});
        }
        for (int i = 0; i < points; ++i) {
            const double r = 0.05 + (10.0 - 0.05) * i / (points - 1);
            rows.push_back({"phi1", r, phi1(r)});
        }
    } else if (kind == "zeros") {
        const WeightPair wp = WeightPair::make(k, l);
        ScanOptions opts = cfg.scan_options();
        for (const auto& z : count_arc_zeros(wp, opts).zeros)
            rows.push_back({"arc", std::cos(z.t), std::sin(z.t)});
        for (const auto& z : count_side_zeros(wp, opts).zeros)
            rows.push_back({"side", 0.5, z.t});
    } else if (kind == "regimes") {
        // |approximation - lattice G_k| on x = 1/2 for each regime, at every height
        const double y_lo = 1.0, y_hi = 1.5 * std::pow(static_cast<double>(k), 2.0 / 3);
        for (int i = 0; i < points; ++i) {
            const double y = y_lo + (y_hi - y_lo) * i / (points - 1);
            const UpperHalfPoint z{0.5, y};
            const std::complex<double> truth = gk(k, z, cfg.eps);
            rows.push_back({"small_y", y, std::abs(gk_small_y(k, z) - truth)});
            rows.push_back({"theta", y, std::abs(jacobi_theta(ThetaArgs::for_eisenstein(k, z)) - truth)});
            rows.push_back({"fourier_window", y, std::abs(gk_fourier_window(k, z) - truth)});
        }
        std::stable_sort(rows.begin(), rows.end(), [](const Series& a, const Series& b) { return a.name < b.name; });
    } else {
        throw std::invalid_argument("plotdata: kind must be phi, zeros or regimes");
    }
    emit_series(cfg, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Zeros of E_k E_l - E_{k+l} on the boundary of the fundamental domain"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--eps", cfg.eps, "target accuracy of series evaluations")->check(CLI::Range(1e-15, 1e-6));
    app.add_option("--oversample", cfg.oversample, "scan points per unit of weight on each boundary piece")
        ->check(CLI::Range(1, 1024));
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--jobs", cfg.jobs, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

    auto* eval = app.add_subcommand("eval", "evaluate E_k at a point");
    int ev_k = 0;
    std::string ev_z, ev_method = "lattice";
    eval->add_option("--k", ev_k, "weight")->required();
    eval->add_option("--z", ev_z, "point, e.g. 0.5+3i or i")->required();
    eval->add_option("--method", ev_method, "evaluator")->check(CLI::IsMember({"lattice", "fourier", "theta", "all"}));

    auto* table = app.add_subcommand("table", "reproduce a reference table of zero counts");
    int which = 0;
    table->add_option("which", which, "1: A, 2: B, 3: A - N'")->required()->check(CLI::Range(1, 3));

    auto* scan = app.add_subcommand("scan", "audit every weight pair in a range");
    std::string sc_l = "14..100", sc_k = "14..100";
    bool allow_large = false, no_hunt = false;
    scan->add_option("--l", sc_l, "range of l, a..b");
    scan->add_option("--k", sc_k, "range of k, a..b");
    scan->add_flag("--allow-large", allow_large, "permit k + l > 400");
    scan->add_flag("--no-hunt", no_hunt, "skip the interior zero search");

    auto* aud = app.add_subcommand("audit", "audit one weight pair");
    int au_k = 0, au_l = 0;
    aud->add_option("--k", au_k, "weight k")->required();
    aud->add_option("--l", au_l, "weight l")->required();

    auto* plot = app.add_subcommand("plotdata", "emit (x, y) series for plotting");
    std::string kind;
    int pd_k = 56, pd_l = 20, pd_points = 200;
    plot->add_option("kind", kind, "phi, zeros or regimes")->required()->check(CLI::IsMember({"phi", "zeros", "regimes"}));
    plot->add_option("--k", pd_k, "weight k");
    plot->add_option("--l", pd_l, "weight l");
    plot->add_option("--points", pd_points, "samples per series");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*eval)
            return cmd_eval(cfg, ev_k, ev_z, ev_method);
        if (*table)
            return cmd_table(cfg, which);
        if (*scan)
            return cmd_scan(cfg, sc_l, sc_k, allow_large, no_hunt);
        if (*aud)
            return cmd_audit(cfg, au_k, au_l);
        if (*plot)
            return cmd_plotdata(cfg, kind, pd_k, pd_l, pd_points);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
