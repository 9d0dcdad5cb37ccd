#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trcalc/chart.hpp"

namespace trcalc {

// invalid job parameters; the CLI maps this to exit code 2
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct JobSpec {
    std::string command;  // "chart" or "descent"
    std::string target;   // chart: tr | filtration | gr | mackey | e3alg; descent: verify | dim0
    int p = 2;
    int r = 1;
    int vars = 1;
    int max_weight = 0;
    std::optional<Multidegree> deg;  // a single multidegree instead of the weight range
    int max_dim = 8;
    std::optional<int> i;            // filtration index
    std::optional<int> denom;        // workspace level N (default r)
    std::optional<int> kmax;         // cobar truncation (default d + 2)
    int sigma = 0;                   // sigma power for e3alg
    std::string format = "json";

    bool operator==(const JobSpec&) const = default;
};

void validate(const JobSpec& s);

struct Cell {
    Multidegree deg;
    int dim = 0;
    std::vector<int> exps;
    std::vector<std::string> labels;

    bool operator==(const Cell&) const = default;
};

struct ChartFile {
    int version = 1;
    JobSpec spec;
    std::string engine;  // oracle | witt-row | symbolic | compare
    std::vector<Cell> cells;

    void sort_cells();
    bool operator==(const ChartFile&) const = default;
};

struct JobResult {
    ChartFile file;
    bool pass = true;
    std::vector<std::string> failures;
};

JobResult run_job(const JobSpec& s);

std::string to_json(const ChartFile& f);
ChartFile chart_from_json(const std::string& text);
std::string to_csv(const ChartFile& f);
std::string to_table(const ChartFile& f);
std::string render(const ChartFile& f, const std::string& format);

// cell-level differences after canonical sorting; empty when identical
std::vector<std::string> cell_diff(const ChartFile& want, const ChartFile& got);

}  // namespace trcalc
