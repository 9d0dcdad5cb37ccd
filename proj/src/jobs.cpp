#include "trcalc/jobs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "trcalc/cobar.hpp"
#include "trcalc/oracle.hpp"
#include "trcalc/parallel.hpp"
#include "trcalc/reps.hpp"

namespace trcalc {

using nlohmann::json;

// ---------------------------------------------------------------- validation

namespace {

const std::set<std::string> kChartTargets{"tr", "filtration", "gr", "mackey", "e3alg"};
const std::set<std::string> kDescentTargets{"verify", "dim0", "e2"};

void require(bool ok, const std::string& msg)
{
    if (!ok) throw UsageError(msg);
}

}  // namespace

void validate(const JobSpec& s)
{
    if (s.command == "chart")
        require(kChartTargets.count(s.target) > 0, "unknown chart target '" + s.target + "'");
    else if (s.command == "descent")
        require(kDescentTargets.count(s.target) > 0, "unknown descent target '" + s.target + "'");
    else
        throw UsageError("unknown command '" + s.command + "'");
    require(is_prime(s.p), "p must be prime");
    require(s.r >= 1, "r must be at least 1");
    try {
        ipow(s.p, s.r);
    } catch (const std::exception&) {
        throw UsageError("p^r exceeds the supported modulus");
    }
    require(s.vars >= 1, "vars must be positive");
    require(s.max_weight >= 0, "max-weight must be non-negative");
    require(s.max_dim >= 0, "max-dim must be non-negative");
    require(s.sigma >= 0, "sigma must be non-negative");
    if (s.deg) {
        require(static_cast<int>(s.deg->size()) == s.vars, "deg length must equal vars");
        for (int x : *s.deg) require(x >= 0, "degrees must be non-negative");
    }
    if (s.i) require(*s.i >= 0, "filtration index must be non-negative");
    if (s.command == "chart" && (s.target == "filtration" || s.target == "gr"))
        require(s.i.has_value(), "--i is required for " + s.target);
    if (s.kmax) require(*s.kmax >= 1, "kmax must be positive");
    if (s.denom) {
        if (s.command == "descent") require(*s.denom >= s.r - 1, "denom must be at least r - 1");
        require(*s.denom >= 0 && *s.denom <= 12, "denom out of range");
    }
    if (s.command == "descent") {
        require(s.target == "verify" || s.vars == 1, s.target + " handles one variable only");
        require(!(s.i && s.vars > 1), "filtration comparison handles one variable only");
    }
    require(s.format == "json" || s.format == "csv" || s.format == "table", "format must be json, csv or table");
}

// ---------------------------------------------------------------- running

void ChartFile::sort_cells()
{
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return std::tie(a.deg, a.dim, a.labels, a.exps) < std::tie(b.deg, b.dim, b.labels, b.exps);
    });
}

namespace {

std::vector<Multidegree> multidegrees(const JobSpec& s)
{
    if (s.deg) return {*s.deg};
    std::vector<Multidegree> out;
    Multidegree cur;
    auto rec = [&](auto&& self, int left) -> void {
        if (static_cast<int>(cur.size()) == s.vars) {
            out.push_back(cur);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            cur.push_back(x);
            self(self, left - x);
            cur.pop_back();
        }
    };
    rec(rec, s.max_weight);
    return out;
}

Cell make_cell(const Multidegree& d, int dim, const PGroup& g, std::vector<std::string> labels = {})
{
    return Cell{d, dim, g.exponents(), std::move(labels)};
}

std::string deg_str(const Multidegree& d)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    os << ")";
    return os.str();
}

void oracle_cells(const JobSpec& s, ChartFile& f)
{
    const auto degs = multidegrees(s);
    if (s.target == "mackey") {
        for (int n = 0; n <= s.max_dim; ++n) {
            auto M = w_mackey(s.p, s.r, n);
            for (int l = 1; l <= s.r; ++l) {
                auto g = M.levels[l - 1].group();
                if (!g.trivial()) f.cells.push_back(make_cell({l}, n, g, {"level " + std::to_string(l)}));
            }
        }
        return;
    }
    if (s.target == "e3alg") {
        const int L = s.denom.value_or(3);
        for (int level = 0; level <= L; ++level) {
            const i64 pl = ipow(s.p, level);
            for (i64 num = 0; num < (s.sigma + 1) * pl; ++num) {
                if (level > 0 && num % s.p == 0) continue;
                Rational q{num, level};
                auto e = e3alg_chart(s.p, s.r, s.sigma, q);
                if (!e || *e == 0) continue;
                f.cells.push_back(Cell{{s.sigma}, 2 * s.sigma, {*e}, {"z^" + q.str(s.p)}});
            }
        }
        return;
    }
    for (const auto& d : degs)
        for (int n = 0; n <= s.max_dim; ++n) {
            PGroup g(s.p);
            std::vector<std::string> lab;
            if (s.target == "tr")
                g = tr_chart(s.p, s.r, s.vars, d, n, &lab);
            else if (s.target == "filtration")
                g = filtration_chart(s.p, s.r, s.vars, *s.i, d, n);
            else
                g = gr_chart(s.p, s.r, s.vars, *s.i, d, n);
            if (!g.trivial()) f.cells.push_back(make_cell(d, n, g, std::move(lab)));
        }
}

struct Partial {
    std::vector<Cell> cells;
    std::vector<std::string> failures;
};

int workspace_level(const JobSpec& s) { return s.denom.value_or(s.r); }
int cobar_length(const JobSpec& s, int d) { return s.kmax.value_or(d + 2); }

Partial dim0_cells(const JobSpec& s, int d, std::vector<PGroup>* rows = nullptr)
{
    Partial out;
    auto X = dim0_complex(s.p, s.r, d, cobar_length(s, d), workspace_level(s));
    auto H = X.cohomology();
    if (rows) *rows = H;
    for (std::size_t k = 0; k < H.size(); ++k)
        if (!H[k].trivial()) out.cells.push_back(make_cell({d}, static_cast<int>(k), H[k], {"H^" + std::to_string(k)}));
    const int want = d == 0 ? s.r : std::min(vp(d, s.p) + 1, s.r);
    if (H.empty() || H[0] != PGroup::cyclic(s.p, want))
        out.failures.push_back("d=" + std::to_string(d) + " H^0 = " + (H.empty() ? "?" : H[0].str()) + ", expected " +
                               PGroup::cyclic(s.p, want).str());
    for (std::size_t k = 1; k < H.size(); ++k)
        if (!H[k].trivial())
            out.failures.push_back("d=" + std::to_string(d) + " H^" + std::to_string(k) + " = " + H[k].str() +
                                   ", expected 0");
    return out;
}

Partial verify_one(const JobSpec& s, const Multidegree& deg)
{
    Partial out;
    CompareReport rep;
    if (s.vars == 1) {
        const int d = deg[0];
        auto page = symbolic_e2(s.p, s.r, d, s.max_dim);
        rep = compare(page, s.p, s.r, d, s.max_dim, s.i);
        std::vector<PGroup> X;
        out.failures = dim0_cells(s, d, &X).failures;
        auto it = page.cells.find({0, 0});
        const PGroup sym0 = it == page.cells.end() ? PGroup(s.p) : it->second;
        if (!X.empty() && X[0] != sym0)
            out.failures.push_back("d=" + std::to_string(d) + " dimension-0 row " + X[0].str() +
                                   " differs from symbolic " + sym0.str());
    } else {
        rep = compare(multivar_e2(s.p, s.r, deg, s.max_dim), s.p, s.r, s.max_dim);
    }
    for (const auto& e : rep.errors) out.failures.push_back(deg_str(deg) + " " + e);
    for (const auto& c : rep.cells) {
        if (!c.got.trivial()) out.cells.push_back(make_cell(deg, c.dim, c.got, c.labels));
        if (!c.pass)
            out.failures.push_back(deg_str(deg) + " n=" + std::to_string(c.dim) + ": got " + c.got.str() + ", want " +
                                   c.want.str());
    }
    return out;
}

Partial e2_cells(const JobSpec& s, int d)
{
    Partial out;
    auto page = symbolic_e2(s.p, s.r, d, s.max_dim);
    for (const auto& [key, g] : page.cells) {
        auto it = page.labels.find(key);
        out.cells.push_back(make_cell({d, key.first}, key.second, g, it == page.labels.end() ? std::vector<std::string>{} : it->second));
    }
    for (const auto& e : page.diagnostics) out.failures.push_back("d=" + std::to_string(d) + " " + e);
    return out;
}

}  // namespace

JobResult run_job(const JobSpec& s)
{
    validate(s);
    JobResult res;
    res.file.spec = s;
    if (s.command == "chart") {
        res.file.engine = "oracle";
        oracle_cells(s, res.file);
        res.file.sort_cells();
        return res;
    }
    res.file.engine = s.target == "verify" ? "compare" : s.target == "dim0" ? "witt-row" : "symbolic";
    const auto degs = multidegrees(s);
    std::vector<Partial> parts(degs.size());
    parallel_for(static_cast<int>(degs.size()), [&](int j) {
        if (s.target == "verify")
            parts[j] = verify_one(s, degs[j]);
        else if (s.target == "dim0")
            parts[j] = dim0_cells(s, degs[j][0]);
        else
            parts[j] = e2_cells(s, degs[j][0]);
    });
    for (auto& part : parts) {
        for (auto& c : part.cells) res.file.cells.push_back(std::move(c));
        for (auto& f : part.failures) res.failures.push_back(std::move(f));
    }
    // dim0 output is a record of the row; its expectation is checked only by verify
    res.pass = s.target == "dim0" || res.failures.empty();
    res.file.sort_cells();
    return res;
}

// ---------------------------------------------------------------- serialization

namespace {

json spec_json(const JobSpec& s)
{
    json j;
    j["command"] = s.command;
    j["target"] = s.target;
    j["p"] = s.p;
    j["r"] = s.r;
    j["vars"] = s.vars;
    j["max_weight"] = s.max_weight;
    j["deg"] = s.deg ? json(*s.deg) : json(nullptr);
    j["max_dim"] = s.max_dim;
    j["i"] = s.i ? json(*s.i) : json(nullptr);
    j["denom"] = s.denom ? json(*s.denom) : json(nullptr);
    j["kmax"] = s.kmax ? json(*s.kmax) : json(nullptr);
    j["sigma"] = s.sigma;
    j["format"] = s.format;
    return j;
}

template <class T>
std::optional<T> opt(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

JobSpec spec_from(const json& j)
{
    JobSpec s;
    s.command = j.at("command").get<std::string>();
    s.target = j.at("target").get<std::string>();
    s.p = j.at("p").get<int>();
    s.r = j.at("r").get<int>();
    s.vars = j.at("vars").get<int>();
    s.max_weight = j.at("max_weight").get<int>();
    s.deg = opt<Multidegree>(j, "deg");
    s.max_dim = j.at("max_dim").get<int>();
    s.i = opt<int>(j, "i");
    s.denom = opt<int>(j, "denom");
    s.kmax = opt<int>(j, "kmax");
    s.sigma = j.value("sigma", 0);
    s.format = j.value("format", std::string("json"));
    return s;
}

json cells_json(const std::vector<Cell>& cells)
{
    json arr = json::array();
    for (const auto& c : cells) arr.push_back({{"deg", c.deg}, {"dim", c.dim}, {"exps", c.exps}, {"labels", c.labels}});
    return arr;
}

std::string join(const std::vector<std::string>& v, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::string exps_str(const std::vector<int>& e, const char* sep)
{
    std::vector<std::string> s;
    for (int x : e) s.push_back(std::to_string(x));
    return join(s, sep);
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

std::string to_json(const ChartFile& f)
{
    json j;
    j["version"] = f.version;
    j["spec"] = spec_json(f.spec);
    j["engine"] = f.engine;
    j["cells"] = cells_json(f.cells);
    return j.dump(2) + "\n";
}

ChartFile chart_from_json(const std::string& text)
{
    json j = json::parse(text);
    ChartFile f;
    f.version = j.at("version").get<int>();
    if (f.version != 1) throw std::runtime_error("unsupported chart file version " + std::to_string(f.version));
    f.spec = spec_from(j.at("spec"));
    f.engine = j.at("engine").get<std::string>();
    for (const auto& c : j.at("cells"))
        f.cells.push_back(Cell{c.at("deg").get<Multidegree>(), c.at("dim").get<int>(), c.at("exps").get<std::vector<int>>(),
                               c.at("labels").get<std::vector<std::string>>()});
    return f;
}

std::string to_csv(const ChartFile& f)
{
    std::ostringstream os;
    os << "deg,dim,exps,labels\n";
    for (const auto& c : f.cells) {
        std::vector<std::string> d;
        for (int x : c.deg) d.push_back(std::to_string(x));
        os << join(d, ";") << "," << c.dim << "," << exps_str(c.exps, ";") << "," << csv_quote(join(c.labels, "|")) << "\n";
    }
    return os.str();
}

std::string to_table(const ChartFile& f)
{
    std::set<int> dims;
    std::map<Multidegree, std::map<int, std::vector<int>>> grid;
    for (const auto& c : f.cells) {
        dims.insert(c.dim);
        auto& e = grid[c.deg][c.dim];
        e.insert(e.end(), c.exps.begin(), c.exps.end());
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"deg"};
    for (int n : dims) head.push_back("n=" + std::to_string(n));
    rows.push_back(head);
    for (auto& [d, byn] : grid) {
        std::vector<std::string> row{deg_str(d)};
        for (int n : dims) {
            auto it = byn.find(n);
            if (it == byn.end()) {
                row.push_back(".");
                continue;
            }
            std::sort(it->second.begin(), it->second.end());
            row.push_back(exps_str(it->second, "+"));
        }
        rows.push_back(row);
    }
    std::vector<std::size_t> w(head.size(), 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], row[i].size());
    std::ostringstream os;
    os << "# p=" << f.spec.p << " r=" << f.spec.r << " engine=" << f.engine << "; entries are exponents of p\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << row[i];
            if (i + 1 < row.size()) os << std::string(w[i] - row[i].size() + 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

std::string render(const ChartFile& f, const std::string& format)
{
    if (format == "csv") return to_csv(f);
    if (format == "table") return to_table(f);
    return to_json(f);
}

std::vector<std::string> cell_diff(const ChartFile& want, const ChartFile& got)
{
    ChartFile a = want, b = got;
    a.sort_cells();
    b.sort_cells();
    if (cells_json(a.cells).dump() == cells_json(b.cells).dump()) return {};
    using Key = std::pair<Multidegree, int>;
    std::map<Key, std::pair<std::vector<int>, std::vector<std::string>>> ma, mb;
    auto fill = [](const ChartFile& f, auto& m) {
        for (const auto& c : f.cells) {
            auto& e = m[{c.deg, c.dim}];
            e.first.insert(e.first.end(), c.exps.begin(), c.exps.end());
            e.second.insert(e.second.end(), c.labels.begin(), c.labels.end());
            std::sort(e.first.begin(), e.first.end());
        }
    };
    fill(a, ma);
    fill(b, mb);
    std::set<Key> keys;
    for (const auto& [k, v] : ma) keys.insert(k);
    for (const auto& [k, v] : mb) keys.insert(k);
    std::vector<std::string> out;
    for (const auto& k : keys) {
        auto x = ma.count(k) ? ma[k] : decltype(ma)::mapped_type{};
        auto y = mb.count(k) ? mb[k] : decltype(mb)::mapped_type{};
        if (x == y) continue;
        std::ostringstream os;
        os << deg_str(k.first) << " n=" << k.second << ": recorded [" << exps_str(x.first, ",") << "] now ["
           << exps_str(y.first, ",") << "]";
        if (x.first == y.first) os << " (labels differ)";
        out.push_back(os.str());
    }
    if (out.empty()) out.push_back("cell order or duplicate cells differ");
    return out;
}

}  // namespace trcalc
