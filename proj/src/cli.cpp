#include "cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "twistlab/engine.hpp"

namespace twistlab::cli {

namespace {

struct Options {
    std::string in_path;
    std::string out_path;
    bool strict = false;
    bool timing = false;
    unsigned jobs = 1;
    std::optional<std::string> max_x;
    std::optional<std::string> seed;
    std::optional<std::string> d;
    std::optional<std::string> curve;
    // subcommand specific
    std::optional<int> d2;
    std::optional<int> dim_vt;
    std::string T;
    std::string mode = "stable";
    std::optional<std::string> p;
    std::optional<std::string> t0;
    std::optional<std::string> eta;
    std::string places;
    std::string matrix;
};

std::shared_ptr<spdlog::logger> logger() {
    static std::shared_ptr<spdlog::logger> log = [] {
        auto l = spdlog::get("twistlab");
        if (!l) l = spdlog::stderr_color_mt("twistlab");
        l->set_level(spdlog::level::warn);
        if (const char* env = std::getenv("TWISTLAB_LOG")) l->set_level(spdlog::level::from_str(env));
        return l;
    }();
    return log;
}

struct Outcome {
    std::string line;
    bool ok = true;
    bool unsupported = false;
};

// Runs f(i) for i in [0, n) on `jobs` threads; results kept in index order.
std::vector<Outcome> ordered_map(std::size_t n, unsigned jobs, const std::function<Outcome(std::size_t)>& f) {
    std::vector<Outcome> results(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) results[i] = f(i);
    };
    const unsigned threads = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (threads <= 1) {
        worker();
        return results;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

Json parse_integer_flag(const std::string& s) {
    Integer n;
    if (s.empty() || n.set_str(s, 10) != 0) throw Error(ErrorCode::InvalidInput, "not an integer: " + s);
    return integer_json(n);
}

Json parse_json_flag(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed ") + what + ": " + e.what());
    }
}

// Flag values layered over a per-record inputs object.
Json inputs_from_flags(const std::string& command, const Options& o) {
    Json in = Json::object();
    if (o.d) in["d"] = parse_integer_flag(*o.d);
    if (o.max_x) in["maxX"] = parse_integer_flag(*o.max_x);
    if (o.seed) in["seed"] = parse_integer_flag(*o.seed);
    if (o.d2) in["d2"] = *o.d2;
    if (o.dim_vt) in["dimVT"] = *o.dim_vt;
    if (o.p) in["p"] = parse_integer_flag(*o.p);
    if (o.t0) in["t0"] = parse_integer_flag(*o.t0);
    if (o.eta) in["eta"] = parse_integer_flag(*o.eta);
    if (command == "search") in["mode"] = o.mode;
    if (command == "search" || command == "density") in["jobs"] = o.jobs;
    if (!o.T.empty()) {
        Json T = Json::array();
        std::stringstream ss(o.T);
        for (std::string item; std::getline(ss, item, ',');) {
            if (item == "inf" || item == "real") T.push_back("inf");
            else T.push_back(parse_integer_flag(item));
        }
        in["T"] = T;
    }
    if (!o.places.empty()) in["places"] = parse_json_flag(o.places, "--places");
    if (!o.matrix.empty()) in["matrix"] = parse_json_flag(o.matrix, "--matrix");
    return in;
}

// The record-level field a bare input line fills in.
const char* primary_field(const std::string& command) {
    if (command == "classify") return "places";
    if (command == "gmodule") return nullptr;
    return "curve";
}

bool needs_stream(const std::string& command, const Options& o) {
    if (o.curve) return false;
    if (command == "classify") return o.places.empty();
    if (command == "gmodule") return !o.p;
    if (command == "search" && o.mode == "family") return false;
    return true;
}

Json merge_record(const std::string& command, const Json& line, const Json& flags) {
    Json in = flags;
    const char* field = primary_field(command);
    const bool full_record = line.is_object() && field && line.contains(field);
    if (full_record || !field) {
        for (auto it = line.begin(); it != line.end(); ++it) in[it.key()] = it.value();
    } else {
        in[field] = line;
    }
    return in;
}

Outcome execute(const std::string& command, const Json& inputs) {
    Outcome o;
    try {
        CommandResult r = run_command(command, inputs);
        o.line = r.output.dump();
        o.unsupported = r.unsupported;
    } catch (const Error& e) {
        o.ok = false;
        o.line = Json{{"error", std::string(error_code_name(e.code()))}, {"message", e.what()}}.dump();
    }
    return o;
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

int run_single(const std::string& command, const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const Json flags = inputs_from_flags(command, o);
    std::vector<Json> records;
    std::vector<std::string> parse_errors;
    if (!needs_stream(command, o)) {
        Json in_rec = flags;
        if (o.curve) in_rec = merge_record(command, parse_json_flag(*o.curve, "--curve"), flags);
        records.push_back(in_rec);
    } else {
        const auto lines = read_lines(in);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (blank(lines[i])) continue;
            try {
                records.push_back(merge_record(command, Json::parse(lines[i]), flags));
            } catch (const Json::parse_error&) {
                err << "line " << (i + 1) << ": malformed JSON\n";
                parse_errors.push_back(lines[i]);
            }
        }
    }
    const auto results = ordered_map(records.size(), o.jobs, [&](std::size_t i) {
        logger()->debug("{} record {}", command, i);
        return execute(command, records[i]);
    });
    bool failed = !parse_errors.empty(), unsupported = false;
    for (const auto& r : results) {
        out << r.line << '\n';
        if (!r.ok) {
            failed = true;
            err << r.line << '\n';
        }
        unsupported = unsupported || r.unsupported;
    }
    if (failed) return kInputError;
    if (o.strict && unsupported) return kUnsupported;
    return kOk;
}

int run_batch(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto lines = read_lines(in);
    struct Job {
        std::size_t line;
        std::optional<Json> record;
        std::string problem;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (blank(lines[i])) continue;
        Job job{i + 1, std::nullopt, {}};
        try {
            Json rec = Json::parse(lines[i]);
            if (!rec.is_object() || !rec.contains("command") || !rec["command"].is_string())
                job.problem = "record lacks a string \"command\"";
            else job.record = rec;
        } catch (const Json::parse_error&) {
            job.problem = "malformed JSON";
        }
        jobs.push_back(std::move(job));
    }
    const auto results = ordered_map(jobs.size(), o.jobs, [&](std::size_t i) {
        const Job& job = jobs[i];
        Outcome oc;
        if (!job.record) {
            oc.ok = false;
            oc.line = Json{{"line", job.line}, {"error", "InvalidInput"}, {"message", job.problem}}.dump();
            return oc;
        }
        const std::string command = (*job.record)["command"].get<std::string>();
        const Json inputs = job.record->value("inputs", Json::object());
        const auto start = std::chrono::steady_clock::now();
        Json rec{{"command", command}, {"inputs", inputs}, {"engineVersion", kEngineVersion}};
        try {
            CommandResult r = run_command(command, inputs);
            rec["outputs"] = r.output;
            oc.unsupported = r.unsupported;
        } catch (const Error& e) {
            oc.ok = false;
            rec = Json{{"line", job.line},
                       {"command", command},
                       {"error", std::string(error_code_name(e.code()))},
                       {"message", e.what()}};
        }
        if (o.timing && oc.ok) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start);
            rec["elapsedMillis"] = ms.count();
        }
        oc.line = rec.dump();
        return oc;
    });
    long ok = 0, failed = 0;
    bool unsupported = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
        out << results[i].line << '\n';
        if (results[i].ok) ++ok;
        else {
            ++failed;
            err << "line " << jobs[i].line << ": " << results[i].line << '\n';
        }
        unsupported = unsupported || results[i].unsupported;
    }
    out << Json{{"summary", {{"ok", ok}, {"failed", failed}}}}.dump() << '\n';
    if (failed > 0) return kInputError;
    if (o.strict && unsupported) return kUnsupported;
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quadratic twists and 2-Selmer parity over Q", "twistlab"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--in", o.in_path, "Input JSONL file (default stdin)");
        sub->add_option("--out", o.out_path, "Output JSONL file (default stdout)");
        sub->add_flag("--strict", o.strict, "Exit 3 when a result is Unsupported or OutOfDomain");
        sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--max-x", o.max_x, "Search bound");
        sub->add_option("--seed", o.seed, "Seed recorded with randomized batches");
        sub->add_option("--d", o.d, "Twist discriminant");
        sub->add_option("--curve", o.curve, "Curve JSON, {\"a\":[...]} or {\"e\":[...]}");
        sub->add_flag("--timing", o.timing, "Record elapsed time in batch records");
    };
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const char* name : {"analyze", "twist", "envelope", "descend", "search", "density", "classify", "gmodule", "batch"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub);
        subs.emplace_back(name, sub);
    }
    app.get_subcommand("envelope")->add_option("--d2", o.d2, "d2 of the base curve")->required();
    app.get_subcommand("envelope")->add_option("--dim-vt", o.dim_vt, "dim V_T when known");
    app.get_subcommand("descend")->add_option("--T", o.T, "Comma separated places (inf or primes)");
    app.get_subcommand("twist")->add_option("--d2", o.d2, "d2 of the base curve");
    auto* search = app.get_subcommand("search");
    search->add_option("--mode", o.mode, "stable|step|flip|witness|density|family")
        ->check(CLI::IsMember({"stable", "step", "flip", "witness", "density", "family"}));
    search->add_option("--p", o.p, "Prime for the family mode");
    search->add_option("--t0", o.t0, "Family parameter");
    search->add_option("--eta", o.eta, "Override of the family shift");
    app.get_subcommand("classify")->add_option("--places", o.places, "JSON array of place descriptors");
    app.get_subcommand("gmodule")->add_option("--p", o.p, "Group order");
    app.get_subcommand("gmodule")->add_option("--matrix", o.matrix, "JSON array of row bit strings");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) command = name;

    std::ifstream in_file;
    std::istream* input = &in;
    if (!o.in_path.empty()) {
        in_file.open(o.in_path);
        if (!in_file) {
            err << "cannot open " << o.in_path << '\n';
            return kInputError;
        }
        input = &in_file;
    }
    std::ofstream out_file;
    std::ostream* output = &out;
    if (!o.out_path.empty()) {
        out_file.open(o.out_path);
        if (!out_file) {
            err << "cannot open " << o.out_path << '\n';
            return kInputError;
        }
        output = &out_file;
    }
    logger()->info("running {}", command);
    try {
        if (command == "batch") return run_batch(o, *input, *output, err);
        return run_single(command, o, *input, *output, err);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace twistlab::cli
