// Command-line front end for the etframe shared library: generation of
// conference matrices, R-matrices and ETFs, diagonal partitions, subset-norm
// verification against the MSS and sharper bounds, bound tables, and the
// random counterexample search.
//
// Exit codes: 0 all verdicts pass, 1 a bound verdict failed (or a violation
// was found), 2 malformed input or usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "etframe/etframe.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

[[noreturn]] void fail(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(kExitUsage);
}

void check(etf_status status) {
    if (status != ETF_OK)
        fail(std::string(etf_status_string(status)) + ": " + etf_last_error());
}

struct ConferenceDeleter {
    void operator()(etf_conference* p) const { etf_conference_free(p); }
};
struct GramDeleter {
    void operator()(etf_gram* p) const { etf_gram_free(p); }
};
struct FrameDeleter {
    void operator()(etf_frame* p) const { etf_frame_free(p); }
};
struct PartitionDeleter {
    void operator()(etf_partition* p) const { etf_partition_free(p); }
};

using ConferencePtr = std::unique_ptr<etf_conference, ConferenceDeleter>;
using GramPtr = std::unique_ptr<etf_gram, GramDeleter>;
using FramePtr = std::unique_ptr<etf_frame, FrameDeleter>;
using PartitionPtr = std::unique_ptr<etf_partition, PartitionDeleter>;

ConferencePtr build_conference(int k) {
    etf_conference* c = nullptr;
    check(etf_conference_build(k, &c));
    return ConferencePtr(c);
}

GramPtr build_gram(const etf_conference* c, double alpha) {
    etf_gram* g = nullptr;
    check(etf_gram_build(c, alpha, &g));
    return GramPtr(g);
}

FramePtr build_frame(const etf_gram* g) {
    etf_frame* f = nullptr;
    check(etf_frame_build(g, &f));
    return FramePtr(f);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) fail("cannot open output file: " + out_path);
    file << text;
}

std::string g15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string fixed6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

json load_json(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) fail("cannot open input file: " + path);
    json j;
    try {
        file >> j;
    } catch (const json::exception& e) {
        fail(path + ": " + e.what());
    }
    return j;
}

FramePtr frame_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("m") || !j.contains("vectors"))
        fail("frame file must contain n, m, and vectors");
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    const bool real_field = j.value("field", "complex") == "real";
    const auto& vectors = j.at("vectors");
    if (!vectors.is_array() || static_cast<int>(vectors.size()) != n)
        fail("frame file: vectors must be an array of n vectors");
    std::vector<double> re(static_cast<size_t>(n) * m);
    std::vector<double> im(static_cast<size_t>(n) * m);
    for (int v = 0; v < n; ++v) {
        const auto& vec = vectors.at(v);
        if (static_cast<int>(vec.size()) != m)
            fail("frame file: every vector must have m components");
        for (int t = 0; t < m; ++t) {
            const auto& entry = vec.at(t);
            if (!entry.is_array() || entry.size() != 2)
                fail("frame file: components must be [re, im] pairs");
            re[static_cast<size_t>(v) * m + t] = entry.at(0).get<double>();
            im[static_cast<size_t>(v) * m + t] = entry.at(1).get<double>();
        }
    }
    etf_frame* f = nullptr;
    check(etf_frame_create(n, m, real_field ? 1 : 0, re.data(), im.data(), &f));
    return FramePtr(f);
}

PartitionPtr partition_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("subsets"))
        fail("partition file must contain n and subsets");
    const int n = j.at("n").get<int>();
    const auto& subsets = j.at("subsets");
    if (!subsets.is_array()) fail("partition file: subsets must be an array");
    std::vector<size_t> sizes;
    std::vector<int> indices;
    for (const auto& s : subsets) {
        if (!s.is_array()) fail("partition file: each subset must be an array");
        sizes.push_back(s.size());
        for (const auto& idx : s) indices.push_back(idx.get<int>());
    }
    etf_partition* p = nullptr;
    check(etf_partition_create(n, sizes.size(), sizes.data(), indices.data(), &p));
    return PartitionPtr(p);
}

json frame_to_json(const etf_frame* f, int k, double alpha) {
    const int n = etf_frame_size(f);
    const int m = etf_frame_dimension(f);
    std::vector<double> re(static_cast<size_t>(n) * m);
    std::vector<double> im(re.size());
    check(etf_frame_vectors(f, re.data(), im.data(), re.size()));
    json vectors = json::array();
    for (int v = 0; v < n; ++v) {
        json vec = json::array();
        for (int t = 0; t < m; ++t) {
            const size_t at = static_cast<size_t>(v) * m + t;
            vec.push_back(json::array({re[at], im[at]}));
        }
        vectors.push_back(std::move(vec));
    }
    return json{{"k", k},
                {"n", n},
                {"m", m},
                {"alpha", alpha},
                {"field", etf_frame_is_real(f) ? "real" : "complex"},
                {"vectors", std::move(vectors)}};
}

json partition_to_json(const etf_partition* p) {
    json subsets = json::array();
    const size_t count = etf_partition_count(p);
    for (size_t h = 0; h < count; ++h) {
        std::vector<int> s(etf_partition_subset_size(p, h));
        check(etf_partition_subset(p, h, s.data(), s.size()));
        subsets.push_back(s);
    }
    return json{{"n", etf_partition_ground_size(p)}, {"subsets", std::move(subsets)}};
}

const char* route_name(int route) {
    switch (route) {
        case ETF_ROUTE_GRAM: return "gram-eig";
        case ETF_ROUTE_OUTER: return "outer-product-eig";
        case ETF_ROUTE_CLOSED_FORM: return "closed-form";
        default: return "unknown";
    }
}

std::vector<etf_norm_report> run_reports(const etf_frame* f, const etf_partition* p) {
    if (etf_partition_ground_size(p) != etf_frame_size(f))
        fail("partition ground set does not match the frame size");
    std::vector<etf_norm_report> reports(etf_partition_count(p));
    check(etf_check_partition(f, p, reports.data(), reports.size()));
    return reports;
}

json report_to_json(const etf_partition* p, size_t h, const etf_norm_report& rep) {
    std::vector<int> subset(etf_partition_subset_size(p, h));
    check(etf_partition_subset(p, h, subset.data(), subset.size()));
    json j{{"subset", subset},
           {"norm", rep.norm},
           {"route", route_name(rep.route)},
           {"mss_bound", rep.mss_bound},
           {"mss_ok", rep.mss_ok != 0}};
    if (rep.sharp_applicable != 0) {
        j["sharp_bound"] = rep.sharp_bound;
        j["sharp_ok"] = rep.sharp_ok != 0;
    }
    if (rep.small_applicable != 0) {
        j["small_bound"] = rep.small_bound;
        j["small_ok"] = rep.small_ok != 0;
    }
    return j;
}

std::vector<int> parse_subset_list(const std::string& csv) {
    std::vector<int> subset;
    std::stringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            subset.push_back(std::stoi(token));
        } catch (const std::exception&) {
            fail("bad subset element: " + token);
        }
    }
    if (subset.empty()) fail("empty subset list");
    return subset;
}

// ---- subcommand bodies ---------------------------------------------------

int cmd_gen(int k, const std::string& format, const std::string& out) {
    const auto c = build_conference(k);
    const int n = etf_conference_order(c.get());
    std::vector<int8_t> entries(static_cast<size_t>(n) * n);
    check(etf_conference_entries(c.get(), entries.data(), entries.size()));
    std::string text;
    if (format == "csv") {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                text += std::to_string(static_cast<int>(entries[static_cast<size_t>(i) * n + j]));
                text += j + 1 < n ? "," : "\n";
            }
        }
    } else if (format == "json") {
        json rows = json::array();
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int j = 0; j < n; ++j)
                row.push_back(static_cast<int>(entries[static_cast<size_t>(i) * n + j]));
            rows.push_back(std::move(row));
        }
        text = json{{"k", k}, {"order", n}, {"entries", std::move(rows)}}.dump() + "\n";
    } else {
        fail("gen supports --format csv or json");
    }
    write_output(text, out);
    return kExitOk;
}

int cmd_gram(int k, const std::string& alpha_arg, const std::string& out) {
    const auto c = build_conference(k);
    const int n = etf_conference_order(c.get());
    double alpha = etf_gram_mss_alpha(n);
    if (alpha_arg != "auto") {
        try {
            alpha = std::stod(alpha_arg);
        } catch (const std::exception&) {
            fail("--alpha must be 'auto' or a number");
        }
    }
    const auto g = build_gram(c.get(), alpha);
    std::vector<double> re(static_cast<size_t>(n) * n);
    std::vector<double> im(re.size());
    check(etf_gram_entries(g.get(), re.data(), im.data(), re.size()));
    json jre = json::array();
    json jim = json::array();
    for (int i = 0; i < n; ++i) {
        json rrow = json::array();
        json irow = json::array();
        for (int j = 0; j < n; ++j) {
            rrow.push_back(re[static_cast<size_t>(i) * n + j]);
            irow.push_back(im[static_cast<size_t>(i) * n + j]);
        }
        jre.push_back(std::move(rrow));
        jim.push_back(std::move(irow));
    }
    const json j{
        {"k", k}, {"order", n}, {"alpha", alpha}, {"re", std::move(jre)}, {"im", std::move(jim)}};
    write_output(j.dump() + "\n", out);
    return kExitOk;
}

int cmd_frame_build(int k, const std::string& out) {
    const auto c = build_conference(k);
    const double alpha = etf_gram_mss_alpha(etf_conference_order(c.get()));
    const auto g = build_gram(c.get(), alpha);
    const auto f = build_frame(g.get());
    write_output(frame_to_json(f.get(), k, alpha).dump() + "\n", out);
    return kExitOk;
}

int cmd_frame_verify(const std::string& path) {
    const auto f = frame_from_json(load_json(path));
    double tight = 0.0;
    double equi = 0.0;
    double residual = 0.0;
    int is_etf = 0;
    check(etf_frame_tightness_residual(f.get(), &tight));
    check(etf_frame_equiangularity_residual(f.get(), &equi));
    check(etf_frame_welch_verdict(f.get(), &is_etf, &residual));
    std::cout << "tightness_residual " << g15(tight) << "\n";
    std::cout << "equiangularity_residual " << g15(equi) << "\n";
    std::cout << "welch_residual " << g15(residual) << "\n";
    std::cout << "welch_verdict " << (is_etf ? "pass" : "fail") << "\n";
    return is_etf ? kExitOk : kExitViolation;
}

int cmd_partition(int k, int r, bool layout, const std::string& out) {
    etf_partition* raw = nullptr;
    check(etf_partition_diagonal(k, r, &raw));
    const PartitionPtr p(raw);
    if (layout) {
        char* text = nullptr;
        check(etf_partition_layout(p.get(), &text));
        std::string rendered(text);
        etf_string_free(text);
        write_output(rendered, out);
    } else {
        write_output(partition_to_json(p.get()).dump() + "\n", out);
    }
    return kExitOk;
}

int cmd_norms(const std::string& frame_path, const std::string& partition_path,
              const std::string& out) {
    const auto f = frame_from_json(load_json(frame_path));
    const auto p = partition_from_json(load_json(partition_path));
    const auto reports = run_reports(f.get(), p.get());
    std::string text;
    bool all_ok = true;
    for (size_t h = 0; h < reports.size(); ++h) {
        const auto& rep = reports[h];
        text += report_to_json(p.get(), h, rep).dump() + "\n";
        if (!rep.mss_ok) all_ok = false;
        if (rep.sharp_applicable && !rep.sharp_ok) all_ok = false;
        if (rep.small_applicable && !rep.small_ok) all_ok = false;
    }
    write_output(text, out);
    return all_ok ? kExitOk : kExitViolation;
}

int cmd_verify(const std::string& frame_path, const std::string& partition_path,
               const std::string& bound, const std::string& out) {
    const auto f = frame_from_json(load_json(frame_path));
    const auto p = partition_from_json(load_json(partition_path));
    const auto reports = run_reports(f.get(), p.get());
    if (bound == "sharp" && !reports.empty() && !reports.front().sharp_applicable)
        fail("--bound sharp requires a diagonal partition");
    if (bound == "small" && !reports.empty() && !reports.front().small_applicable)
        fail("--bound small requires subset cardinalities at most 3");

    std::string text;
    bool all_ok = true;
    double worst = 0.0;
    for (size_t h = 0; h < reports.size(); ++h) {
        const auto& rep = reports[h];
        bool ok = rep.mss_ok != 0;
        if (bound == "sharp") ok = rep.sharp_ok != 0;
        if (bound == "small") ok = rep.small_ok != 0;
        all_ok = all_ok && ok;
        worst = std::max(worst, rep.norm);
        json j = report_to_json(p.get(), h, rep);
        j["ok"] = ok;
        text += j.dump() + "\n";
    }
    text += json{{"bound", bound}, {"all_ok", all_ok}, {"worst_norm", worst}}.dump() + "\n";
    write_output(text, out);
    return all_ok ? kExitOk : kExitViolation;
}

int cmd_table(int r_max, const std::string& out) {
    if (r_max < 1) fail("--r-max must be at least 1");
    std::string text = "r,diagonal_bound,mss_bound\n";
    for (int r = 1; r <= r_max; ++r) {
        text += std::to_string(r) + "," + fixed6(etf_bound_diagonal(r)) + "," +
                fixed6(etf_bound_mss(r, 0.5)) + "\n";
    }
    write_output(text, out);
    return kExitOk;
}

int cmd_bounds(int r_max, const std::string& out) {
    if (r_max < 1) fail("--r-max must be at least 1");
    std::string text = "r,pair_bound,triple_bound,diagonal_bound,mss_bound\n";
    for (int r = 1; r <= r_max; ++r) {
        text += std::to_string(r) + "," + g15(etf_bound_small(r, 0.5, 2, 0)) + "," +
                g15(etf_bound_small(r, 0.5, 3, 0)) + "," + g15(etf_bound_diagonal(r)) + "," +
                g15(etf_bound_mss(r, 0.5)) + "\n";
    }
    write_output(text, out);
    return kExitOk;
}

int cmd_search(int k, int r, uint64_t trials, uint64_t seed, const std::string& subset_csv,
               const std::string& out) {
    const auto c = build_conference(k);
    const int n = etf_conference_order(c.get());
    const auto g = build_gram(c.get(), etf_gram_mss_alpha(n));
    const auto f = build_frame(g.get());
    const double delta =
        static_cast<double>(etf_frame_dimension(f.get())) / etf_frame_size(f.get());

    if (!subset_csv.empty()) {
        const auto subset = parse_subset_list(subset_csv);
        double norm = 0.0;
        int route = 0;
        check(etf_frame_subset_norm(f.get(), subset.data(), subset.size(), ETF_ROUTE_AUTO,
                                    &norm, &route));
        const double bound = etf_bound_mss(r, delta);
        const bool violation = norm > bound;
        const json j{{"k", k},
                     {"r", r},
                     {"subset", subset},
                     {"norm", norm},
                     {"route", route_name(route)},
                     {"mss_bound", bound},
                     {"violation", violation}};
        write_output(j.dump() + "\n", out);
        return violation ? kExitViolation : kExitOk;
    }

    etf_search_result result{};
    etf_partition* raw = nullptr;
    check(etf_search_violation(f.get(), r, trials, seed, &result, &raw));
    const PartitionPtr p(raw);
    json j{{"k", k},
           {"r", r},
           {"trials", trials},
           {"seed", seed},
           {"found", result.found != 0},
           {"mss_bound", result.mss_bound}};
    if (result.found) {
        j["trial"] = result.trial;
        j["norm"] = result.norm;
        std::vector<int> subset(etf_partition_subset_size(p.get(), 0));
        check(etf_partition_subset(p.get(), 0, subset.data(), subset.size()));
        j["subset"] = subset;
        j["partition"] = partition_to_json(p.get());
    }
    write_output(j.dump() + "\n", out);
    return result.found ? kExitViolation : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"equiangular tight frames from conference matrices: "
                 "construction, diagonal partitions, and subset-norm bounds"};
    app.require_subcommand(1);

    std::string out;
    std::string format = "csv";
    int k = 0;
    int r = 0;
    int r_max = 8;
    std::string alpha = "auto";
    std::string frame_path;
    std::string partition_path;
    std::string bound = "mss";
    std::string verify_file;
    std::string subset_csv;
    bool layout = false;
    uint64_t trials = 10000;
    uint64_t seed = 0;

    auto* gen = app.add_subcommand("gen", "emit a conference matrix C(k)");
    gen->add_option("--k", k, "recursion depth, order 2^k")->required();
    gen->add_option("--format", format, "csv|json")->default_val("csv");
    gen->add_option("--out", out, "output file (default: stdout)");

    auto* gram = app.add_subcommand("gram", "emit the R-matrix I + i*alpha*C(k) as JSON");
    gram->add_option("--k", k, "recursion depth")->required();
    gram->add_option("--alpha", alpha, "'auto' (1/sqrt(2^k-1)) or a positive number")
        ->default_val("auto");
    gram->add_option("--out", out, "output file (default: stdout)");

    auto* frame = app.add_subcommand("frame", "build the ETF from R(k) as JSON");
    frame->add_option("--k", k, "recursion depth");
    frame->add_option("--out", out, "output file (default: stdout)");
    auto* frame_verify =
        frame->add_subcommand("verify", "check tightness, equiangularity, Welch equality");
    frame_verify->add_option("file", verify_file, "frame JSON file")->required();

    auto* partition = app.add_subcommand("partition", "run the diagonal partition algorithm");
    partition->add_option("--k", k, "recursion depth")->required();
    partition->add_option("--r", r, "number of subsets")->required();
    partition->add_flag("--layout", layout, "render the block layout instead of JSON");
    partition->add_option("--out", out, "output file (default: stdout)");

    auto* norms = app.add_subcommand("norms", "per-subset norm reports as JSON lines");
    norms->add_option("--frame", frame_path, "frame JSON file")->required();
    norms->add_option("--partition", partition_path, "partition JSON file")->required();
    norms->add_option("--out", out, "output file (default: stdout)");

    auto* verify = app.add_subcommand("verify", "check subset norms against a bound");
    verify->add_option("--frame", frame_path, "frame JSON file")->required();
    verify->add_option("--partition", partition_path, "partition JSON file")->required();
    verify->add_option("--bound", bound, "mss|sharp|small")->default_val("mss");
    verify->add_option("--out", out, "output file (default: stdout)");

    auto* table = app.add_subcommand("table", "diagonal vs MSS bound table as CSV");
    table->add_option("--r-max", r_max, "largest r")->default_val(8);
    table->add_option("--out", out, "output file (default: stdout)");

    auto* bounds = app.add_subcommand("bounds", "all bound curves as CSV");
    bounds->add_option("--r-max", r_max, "largest r")->default_val(64);
    bounds->add_option("--out", out, "output file (default: stdout)");

    auto* search = app.add_subcommand("search", "random search for an MSS-bound violation");
    search->add_option("--k", k, "recursion depth")->default_val(5);
    search->add_option("--r", r, "subset count of the partition")->default_val(17);
    search->add_option("--trials", trials, "number of random subsets")->default_val(10000);
    search->add_option("--seed", seed, "RNG seed")->default_val(0);
    search->add_option("--subset", subset_csv,
                       "check this comma-separated subset instead of searching");
    search->add_option("--out", out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (gen->parsed()) return cmd_gen(k, format, out);
    if (gram->parsed()) return cmd_gram(k, alpha, out);
    if (frame->parsed()) {
        if (frame_verify->parsed()) return cmd_frame_verify(verify_file);
        if (!frame->count("--k")) fail("frame: --k is required to build a frame");
        return cmd_frame_build(k, out);
    }
    if (partition->parsed()) return cmd_partition(k, r, layout, out);
    if (norms->parsed()) return cmd_norms(frame_path, partition_path, out);
    if (verify->parsed()) return cmd_verify(frame_path, partition_path, bound, out);
    if (table->parsed()) return cmd_table(r_max, out);
    if (bounds->parsed()) return cmd_bounds(r_max, out);
    if (search->parsed()) return cmd_search(k, r, trials, seed, subset_csv, out);
    fail("no subcommand given");
}
