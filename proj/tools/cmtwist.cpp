// cmtwist: command-line front end. Every subcommand builds a job document,
// runs it and emits the JSON report (stdout with --json, a file with --output).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cmtwist/errors.hpp"
#include "cmtwist/report.hpp"

namespace {

using cmtwist::Json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cmtwist::InputError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_payload(const std::string& text) {
    if (text.empty()) return Json::object();
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw cmtwist::InputError(std::string("--payload: malformed JSON: ") + e.what());
    }
}

void print_summary(const Json& doc, std::ostream& out) {
    out << doc["job"]["command"].get<std::string>() << ": " << doc["status"].get<std::string>() << "\n";
    if (doc.contains("error")) {
        const auto& e = doc["error"];
        if (e.contains("hypothesis")) out << "  hypothesis: " << e["hypothesis"].get<std::string>() << "\n";
        out << "  " << e["message"].get<std::string>() << "\n";
        return;
    }
    const auto& res = doc["results"];
    if (res.contains("conclusions"))
        for (const auto& c : res["conclusions"]) out << "  " << c.get<std::string>() << "\n";
    if (res.contains("conclusion") && !res["conclusion"].is_null())
        out << "  " << res["conclusion"].get<std::string>() << "\n";
    if (res.contains("failed_check") && !res["failed_check"].is_null())
        out << "  failed check: " << res["failed_check"].get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Abelian fields, CM-types, character twists and inertia certificates"};
    app.fallthrough();
    app.set_version_flag("--version", std::string(cmtwist::kVersion));
    std::string input_path, output_path;
    bool json = false;
    app.add_option("--input", input_path, "Job document (JSON); replaces the subcommand's payload");
    app.add_option("--output", output_path, "Write the report to this file");
    app.add_flag("--json", json, "Print the full JSON report on stdout");

    struct Sub {
        CLI::App* app;
        cmtwist::Command command;
        std::string payload;
    };
    std::vector<Sub> subs;
    auto add = [&](cmtwist::Command c, const std::string& help) -> Sub& {
        auto* s = app.add_subcommand(cmtwist::to_string(c), help);
        subs.push_back({s, c, {}});
        return subs.back();
    };
    subs.reserve(9);
    add(cmtwist::Command::field, "Describe an abelian field");
    add(cmtwist::Command::cmtype, "Validate a CM-type; stabilizer, reflex field and reflex types");
    add(cmtwist::Command::twist_x, "Twist by a character with values in k^x");
    add(cmtwist::Command::twist_e, "Quadratic twist of the second factor of X x Y");
    Sub& discond = add(cmtwist::Command::discond, "Galois groups of F_Φ(B)/F and M/F_Φ(B) for cyclic M/F");
    Sub& inertia = add(cmtwist::Command::inertia, "Inertia certificate at one prime p = 3 (mod 7)");
    Sub& base = add(cmtwist::Command::base_cert, "K_Φ(A) = K from two primes");
    add(cmtwist::Command::example_41, "Replay the cubic twist of the CM 8-fold over Q(sqrt -3)");
    Sub& ex42 = add(cmtwist::Command::example_42, "Replay the quadratic twists of J x X_0(49)");
    for (Sub& s : subs) s.app->add_option("--payload", s.payload, "Payload as a JSON object");

    cmtwist::u64 n = 0, d = 0, p = 0, q = 0;
    long long twist_d = 0;
    discond.app->add_option("--n", n, "Order of Gal(M/F)");
    discond.app->add_option("--d", d, "Order of Im(c) ∩ G_l(F, A)");
    inertia.app->add_option("--p", p, "Prime");
    base.app->add_option("--p", p, "First prime");
    base.app->add_option("--q", q, "Second prime");
    ex42.app->add_option("--p", p, "First prime (default 3)");
    ex42.app->add_option("--q", q, "Second prime (default 17)");
    ex42.app->add_option("--d", twist_d, "Squarefree twisting parameter (default -1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    cmtwist::Report report;
    try {
        cmtwist::JobSpec job;
        if (!input_path.empty()) {
            job = cmtwist::parse_job(read_file(input_path));
        } else {
            const Sub* chosen = nullptr;
            for (const Sub& s : subs)
                if (s.app->parsed()) chosen = &s;
            if (!chosen) {
                std::cerr << app.help();
                return 1;
            }
            Json payload = parse_payload(chosen->payload);
            auto set_if = [&](const CLI::App* a, const char* flag, const char* key, const Json& value) {
                const CLI::Option* opt = a->get_option_no_throw(flag);
                if (opt && opt->count() > 0) payload[key] = value;
            };
            set_if(chosen->app, "--n", "n", n);
            if (chosen->command == cmtwist::Command::example_42)
                set_if(chosen->app, "--d", "d", twist_d);
            else
                set_if(chosen->app, "--d", "d", d);
            set_if(chosen->app, "--p", "p", p);
            set_if(chosen->app, "--q", "q", q);
            job = cmtwist::validate_input(
                Json{{"command", cmtwist::to_string(chosen->command)}, {"payload", payload}});
        }
        if (!output_path.empty()) job.output_path = output_path;
        report = cmtwist::run(job);
    } catch (const cmtwist::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    }

    const std::string text = cmtwist::serialize(report);
    if (report.document["job"].contains("output")) {
        const auto path = report.document["job"]["output"].get<std::string>();
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "input error: cannot write '" << path << "'\n";
            return 1;
        }
        out << text;
    }
    if (json)
        std::cout << text;
    else
        print_summary(report.document, std::cout);
    return static_cast<int>(report.outcome);
}
