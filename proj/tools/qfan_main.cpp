#include "qfan/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

/* Flat text rendering of the JSON reports for --format text. */
void render_text(const nlohmann::ordered_json& j, const std::string& prefix, std::ostream& os)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            render_text(v, prefix.empty() ? k : prefix + "." + k, os);
    } else if (j.is_array()) {
        if (j.empty()) {
            os << prefix << ": []\n";
            return;
        }
        bool scalar = true;
        for (const auto& v : j) scalar = scalar && !v.is_structured();
        if (scalar) {
            os << prefix << ":";
            for (const auto& v : j) os << " " << v.dump();
            os << "\n";
        } else {
            int idx = 0;
            for (const auto& v : j) render_text(v, prefix + "[" + std::to_string(idx++) + "]", os);
        }
    } else {
        os << prefix << ": " << j.dump() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact toric mirror symmetry checks: GKZ systems, Batyrev rings, "
                 "I-functions and quantum connections from fan data"};
    app.require_subcommand(1);

    qfan::RunConfig cfg;
    const std::vector<std::string> commands = {"check-fan", "classify",  "exact-seq", "mori",
                                               "semigroup", "cohomology", "gkz-ops",  "qring",
                                               "ifunction", "mirror-map", "connection", "verify"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("input", cfg.input, "fan file (JSON or TOML)")->required();
        sub->add_option("--order", cfg.q_order, "q-adic truncation order")->check(CLI::Range(1, 16));
        sub->add_option("--bound", cfg.semigroup_bound, "semigroup slab bound")
            ->check(CLI::Range(1, 16));
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--fixture-mode", cfg.fixture_mode, "always print the full report");
        sub->callback([&cfg, name]() { cfg.command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    std::string out;
    int code = qfan::dispatch(cfg, out);
    if (cfg.format == "text") {
        auto j = nlohmann::ordered_json::parse(out, nullptr, false);
        if (j.is_discarded())
            std::cout << out << "\n";
        else
            render_text(j, "", std::cout);
    } else {
        std::cout << out << std::endl;
    }
    return code;
}
