#include "lsfem/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lsfem/estimate.hpp"

namespace lsfem {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Rate over the trailing window; NaN instead of throwing, for report rows.
double safe_rate(const std::vector<double>& values, const std::vector<double>& scale, Mode mode,
                 int window) {
    if (values.size() < 2) return kNaN;
    for (const double v : values)
        if (!(v > 0.0) || std::isnan(v)) return kNaN;
    return fit_rate(values, scale, mode, window);
}

std::vector<double> tail(const std::vector<double>& v, int window) {
    const std::size_t m = std::min<std::size_t>(v.size(), static_cast<std::size_t>(window));
    return {v.end() - m, v.end()};
}

}  // namespace

Mode mode_from_string(const std::string& name) {
    if (name == "uniform") return Mode::Uniform;
    if (name == "adaptive") return Mode::Adaptive;
    throw std::invalid_argument("unknown mode: " + name);
}

std::string to_string(Mode mode) { return mode == Mode::Uniform ? "uniform" : "adaptive"; }

void validate_config(const RunConfig& config) {
    benchmark(config.benchmark);  // throws on unknown names
    validate_formulation(config.formulation, config.degree);
    if (config.levels < 1) throw std::invalid_argument("levels must be >= 1");
    if (!(config.theta > 0.0) || config.theta > 1.0)
        throw std::invalid_argument("theta must lie in (0,1]");
    if (config.max_dofs < 1) throw std::invalid_argument("max-dofs must be >= 1");
}

double fit_rate(const std::vector<double>& values, const std::vector<double>& scale, Mode mode,
                int window) {
    if (values.size() != scale.size())
        throw std::invalid_argument("fit_rate: mismatched sequence lengths");
    if (values.size() < 2) throw std::invalid_argument("fit_rate: need at least two levels");
    if (window < 2) throw std::invalid_argument("fit_rate: window must be >= 2");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!(values[i] > 0.0) || !(scale[i] > 0.0))
            throw std::invalid_argument("fit_rate: inputs must be positive");

    const std::vector<double> e = tail(values, window);
    const std::vector<double> s = tail(scale, window);
    if (mode == Mode::Uniform) {
        double acc = 0.0;
        for (std::size_t i = 1; i < e.size(); ++i)
            acc += std::log(e[i - 1] / e[i]) / std::log(s[i - 1] / s[i]);
        return acc / static_cast<double>(e.size() - 1);
    }
    // Least-squares slope of log e against log N, reported as positive r
    // where e ~ N^-r.
    const std::size_t n = e.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(s[i]);
        const double y = std::log(e[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

RunReport run(const RunConfig& config) {
    validate_config(config);
    const BenchmarkProblem problem = benchmark(config.benchmark);

    RunReport report;
    report.config = config;

    std::vector<RunRecord> records;
    if (config.mode == Mode::Uniform) {
        Mesh mesh = make_initial_mesh(problem.domain);
        for (int level = 0; level < config.levels; ++level) {
            const SparseSystem system = assemble(mesh, problem, config.formulation, config.degree);
            const SolutionPair solution = solve_ls(system, config.solver);
            RunRecord rec;
            rec.level = level;
            rec.dofs = system.layout.free_count;
            rec.nodes = mesh.vertex_count();
            rec.h_max = mesh.max_diameter();
            rec.errors = error_norms(mesh, problem, solution, config.formulation, config.degree);
            rec.errors.dofs = rec.dofs;
            rec.errors.level = level;
            records.push_back(rec);
            if (level + 1 < config.levels) mesh = uniform_refine(mesh);
        }
    } else {
        AdaptConfig acfg;
        acfg.theta = config.theta;
        acfg.max_levels = config.levels - 1;
        acfg.max_dofs = config.max_dofs;
        records = adaptive_loop(problem, config.formulation, config.degree, acfg, config.solver);
    }

    const int window =
        config.mode == Mode::Uniform ? config.rate_window_uniform : config.rate_window_adaptive;
    std::vector<double> ls, l2u, h1u, l2s, wa, wb, scale;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const RunRecord& rec = records[i];
        ls.push_back(rec.errors.ls);
        l2u.push_back(rec.errors.l2_u);
        h1u.push_back(rec.errors.h1_u);
        l2s.push_back(rec.errors.l2_sigma);
        wa.push_back(rec.errors.wbh2_A);
        wb.push_back(rec.errors.wbh2);
        scale.push_back(config.mode == Mode::Uniform ? rec.h_max
                                                     : static_cast<double>(rec.dofs));
        RunRow row;
        row.record = rec;
        row.rates.ls = safe_rate(ls, scale, config.mode, window);
        row.rates.l2u = safe_rate(l2u, scale, config.mode, window);
        row.rates.h1u = safe_rate(h1u, scale, config.mode, window);
        row.rates.l2sigma = safe_rate(l2s, scale, config.mode, window);
        row.rates.wbh2A = safe_rate(wa, scale, config.mode, window);
        row.rates.wbh2 = safe_rate(wb, scale, config.mode, window);
        report.rows.push_back(row);
    }

    if (!config.out_csv.empty()) {
        std::ofstream out(config.out_csv, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + config.out_csv);
        out << to_csv(report);
    }
    if (!config.out_svg.empty()) {
        std::ofstream out(config.out_svg, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + config.out_svg);
        write_svg(report, out);
    }
    return report;
}

std::string to_csv(const RunReport& report) {
    std::ostringstream out;
    out << "level,dofs,nodes,hmax,ls,eta,l2u,h1u,l2sigma,wbh2A,wbh2,"
           "rate_ls,rate_l2u,rate_h1u,rate_l2sigma,rate_wbh2A,rate_wbh2\n";
    for (const RunRow& row : report.rows) {
        const RunRecord& r = row.record;
        out << r.level << ',' << r.dofs << ',' << r.nodes << ',' << fmt(r.h_max) << ','
            << fmt(r.errors.ls) << ',' << fmt(r.errors.eta) << ',' << fmt(r.errors.l2_u) << ','
            << fmt(r.errors.h1_u) << ',' << fmt(r.errors.l2_sigma) << ',' << fmt(r.errors.wbh2_A)
            << ',' << fmt(r.errors.wbh2) << ',' << fmt(row.rates.ls) << ',' << fmt(row.rates.l2u)
            << ',' << fmt(row.rates.h1u) << ',' << fmt(row.rates.l2sigma) << ','
            << fmt(row.rates.wbh2A) << ',' << fmt(row.rates.wbh2) << '\n';
    }
    return out.str();
}

namespace {

struct Series {
    const char* label;
    const char* color;
    std::vector<double> y;
};

}  // namespace

void write_svg(const RunReport& report, std::ostream& out) {
    const bool uniform = report.config.mode == Mode::Uniform;
    std::vector<double> x;
    for (const RunRow& row : report.rows)
        x.push_back(uniform ? row.record.h_max : static_cast<double>(row.record.dofs));

    std::vector<Series> series = {
        {"ls", "#1f77b4", {}},     {"eta", "#ff7f0e", {}},   {"l2u", "#2ca02c", {}},
        {"h1u", "#d62728", {}},    {"l2sigma", "#9467bd", {}}, {"wbh2A", "#8c564b", {}},
        {"wbh2", "#e377c2", {}},
    };
    for (const RunRow& row : report.rows) {
        const ErrorReport& e = row.record.errors;
        series[0].y.push_back(e.ls);
        series[1].y.push_back(e.eta);
        series[2].y.push_back(e.l2_u);
        series[3].y.push_back(e.h1_u);
        series[4].y.push_back(e.l2_sigma);
        series[5].y.push_back(e.wbh2_A);
        series[6].y.push_back(e.wbh2);
    }

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const double v : x) {
        if (v > 0) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
    }
    for (const Series& s : series)
        for (const double v : s.y)
            if (v > 0 && !std::isnan(v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
    if (!(xmin < xmax)) xmax = xmin * 10;
    if (!(ymin < ymax)) ymax = ymin * 10;

    const double w = 760, h = 560, ml = 70, mr = 170, mt = 30, mb = 60;
    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
    auto px = [&](double v) {
        return ml + (std::log10(v) - lx0) / (lx1 - lx0) * (w - ml - mr);
    };
    auto py = [&](double v) {
        return h - mb - (std::log10(v) - ly0) / (ly1 - ly0) * (h - mt - mb);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (w - ml - mr)
        << "\" height=\"" << (h - mt - mb)
        << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    // decade ticks
    for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
        const double vx = px(std::pow(10.0, d));
        out << "<line x1=\"" << vx << "\" y1=\"" << mt << "\" x2=\"" << vx << "\" y2=\""
            << (h - mb) << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << vx << "\" y=\"" << (h - mb + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">1e" << d << "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
        const double vy = py(std::pow(10.0, d));
        out << "<line x1=\"" << ml << "\" y1=\"" << vy << "\" x2=\"" << (w - mr) << "\" y2=\""
            << vy << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << (ml - 6) << "\" y=\"" << (vy + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    out << "<text x=\"" << (ml + (w - ml - mr) / 2) << "\" y=\"" << (h - 14)
        << "\" font-size=\"13\" text-anchor=\"middle\">" << (uniform ? "h" : "dofs")
        << "</text>\n";

    int legend_row = 0;
    for (const Series& s : series) {
        std::ostringstream pts;
        bool any = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!(x[i] > 0) || !(s.y[i] > 0) || std::isnan(s.y[i])) continue;
            pts << px(x[i]) << ',' << py(s.y[i]) << ' ';
            any = true;
        }
        if (!any) continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.6\" points=\"" << pts.str() << "\"/>\n";
        const double lyy = mt + 16 + 18 * legend_row++;
        out << "<line x1=\"" << (w - mr + 12) << "\" y1=\"" << lyy << "\" x2=\""
            << (w - mr + 40) << "\" y2=\"" << lyy << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << (w - mr + 46) << "\" y=\"" << (lyy + 4)
            << "\" font-size=\"12\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace lsfem
