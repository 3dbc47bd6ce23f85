#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lsfem/adapt.hpp"
#include "lsfem/assembly.hpp"

namespace lsfem {

enum class Mode { Uniform, Adaptive };

Mode mode_from_string(const std::string& name);
std::string to_string(Mode mode);

struct RunConfig {
    std::string benchmark = "smooth-a1";
    Formulation formulation = Formulation::L2;
    int degree = 1;
    Mode mode = Mode::Uniform;
    int levels = 6;          // rows produced in uniform mode; level cap in adaptive mode
    double theta = 0.5;
    SolverConfig solver;
    long max_dofs = 150000;  // adaptive stopping cap
    std::string out_csv;
    std::string out_svg;
    unsigned seed = 0;       // consumed by randomized tests, not by the study
    int rate_window_uniform = 3;
    int rate_window_adaptive = 5;
};

void validate_config(const RunConfig& config);

struct RateSet {
    double ls = 0, l2u = 0, h1u = 0, l2sigma = 0, wbh2A = 0, wbh2 = 0;
};

struct RunRow {
    RunRecord record;
    RateSet rates;  // windowed fit ending at this row; NaN when undefined
};

struct RunReport {
    RunConfig config;
    std::vector<RunRow> rows;
};

/// Uniform mode: mean of log(e_{i-1}/e_i)/log(h_{i-1}/h_i) over consecutive
/// pairs inside the window of trailing levels.  Adaptive mode: positive r
/// from the least-squares slope of log e against log N (e ~ N^-r).
/// Throws std::invalid_argument on fewer than two levels or non-positive data.
double fit_rate(const std::vector<double>& values, const std::vector<double>& scale, Mode mode,
                int window);

RunReport run(const RunConfig& config);

std::string to_csv(const RunReport& report);
void write_svg(const RunReport& report, std::ostream& out);

}  // namespace lsfem
