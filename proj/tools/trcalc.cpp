#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trcalc/jobs.hpp"

using namespace trcalc;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct JobOpts {
    JobSpec spec;
    int weight = -1;
    std::vector<int> deg;
    int i = -1, denom = -1, kmax = -1;
    std::string out;
    CLI::App* chart = nullptr;
    CLI::App* descent = nullptr;
};

void add_flags(CLI::App* sub, JobOpts& o)
{
    sub->add_option("--p", o.spec.p, "prime")->capture_default_str();
    sub->add_option("--r", o.spec.r, "Witt length / fixed-point level")->capture_default_str();
    sub->add_option("--vars", o.spec.vars, "number of polynomial variables")->capture_default_str();
    sub->add_option("--max-weight", o.spec.max_weight, "all multidegrees of total weight up to this bound");
    sub->add_option("--weight", o.weight, "single weight (one variable)");
    sub->add_option("--deg", o.deg, "single multidegree, comma separated")->delimiter(',');
    sub->add_option("--max-dim", o.spec.max_dim, "largest homotopy dimension")->capture_default_str();
    sub->add_option("--i", o.i, "filtration index");
    sub->add_option("--denom", o.denom, "workspace denominator level N (e3alg: largest denominator exponent)");
    sub->add_option("--kmax", o.kmax, "cobar truncation");
    sub->add_option("--sigma", o.spec.sigma, "sigma power for e3alg")->capture_default_str();
    sub->add_option("--format", o.spec.format, "json, csv or table")->capture_default_str();
    sub->add_option("--out", o.out, "output path (default stdout)");
}

void add_jobs(CLI::App* parent, JobOpts& o)
{
    o.chart = parent->add_subcommand("chart", "oracle charts");
    o.chart->add_option("target", o.spec.target, "tr | filtration | gr | mackey | e3alg")->required();
    add_flags(o.chart, o);
    o.descent = parent->add_subcommand("descent", "descent spectral sequence");
    o.descent->add_option("target", o.spec.target, "verify | dim0 | e2")->required();
    add_flags(o.descent, o);
}

JobSpec finish(JobOpts& o)
{
    JobSpec s = o.spec;
    s.command = o.chart && o.chart->parsed() ? "chart" : "descent";
    if (o.weight >= 0) {
        if (!o.deg.empty()) throw UsageError("--weight and --deg are exclusive");
        if (s.vars != 1) throw UsageError("--weight needs --vars 1");
        s.deg = Multidegree{o.weight};
    }
    if (!o.deg.empty()) {
        s.deg = o.deg;
        s.vars = static_cast<int>(o.deg.size());
    }
    if (o.i >= 0) s.i = o.i;
    if (o.denom >= 0) s.denom = o.denom;
    if (o.kmax >= 0) s.kmax = o.kmax;
    if (o.weight < -1 || o.i < -1 || o.denom < -1 || o.kmax < -1) throw UsageError("negative parameter");
    validate(s);
    return s;
}

void write(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

int report(const JobResult& res)
{
    for (const auto& f : res.failures) std::cerr << "FAIL " << f << "\n";
    return res.pass ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"trcalc: TR and descent charts of polynomial rings over F_p"};
    app.require_subcommand(1);

    JobOpts top;
    add_jobs(&app, top);

    auto* golden = app.add_subcommand("golden", "golden-file regression");
    golden->require_subcommand(1);
    JobOpts rec;
    std::string rec_path, chk_path;
    auto* record = golden->add_subcommand("record", "compute a job and store its chart file");
    record->add_option("--path", rec_path, "chart file")->required();
    record->require_subcommand(1);
    add_jobs(record, rec);
    auto* check = golden->add_subcommand("check", "recompute a stored job and compare cells");
    int over_p = -1, over_denom = -1;
    check->add_option("--path", chk_path, "chart file")->required();
    check->add_option("--p", over_p, "override the recorded prime");
    check->add_option("--denom", over_denom, "override the recorded workspace level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (top.chart->parsed() || top.descent->parsed()) {
            auto res = run_job(finish(top));
            write(top.out, render(res.file, res.file.spec.format));
            return report(res);
        }
        if (record->parsed()) {
            auto res = run_job(finish(rec));
            write(rec_path, to_json(res.file));
            std::cerr << "recorded " << res.file.cells.size() << " cells to " << rec_path << "\n";
            return report(res);
        }
        if (check->parsed()) {
            std::ifstream f(chk_path, std::ios::binary);
            if (!f) throw UsageError("cannot read " + chk_path);
            std::stringstream buf;
            buf << f.rdbuf();
            ChartFile want;
            try {
                want = chart_from_json(buf.str());
            } catch (const std::exception& e) {
                throw UsageError(std::string("malformed chart file: ") + e.what());
            }
            JobSpec s = want.spec;
            if (over_p >= 0) s.p = over_p;
            if (over_denom >= 0) s.denom = over_denom;
            auto res = run_job(s);
            auto diff = cell_diff(want, res.file);
            for (const auto& d : diff) std::cout << "DIFF " << d << "\n";
            if (!diff.empty()) return kFail;
            std::cout << "golden check passed (" << want.cells.size() << " cells)\n";
            return report(res);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
