// laurel — exact analysis of holomorphic complexes with a pole parameter.
//
// Subcommands read a JSON problem file (schemas in docs/formats.md) and print
// a deterministic report.  Exit codes: 0 = all certifications pass,
// 2 = mathematical certification failure, 1 = input/usage error.
// The LAUREL_WORKERS environment variable bounds worker threads.

#include <CLI11.hpp>

#include <laurel/laurel.hpp>

int main(int argc, char** argv) {
    CLI::App app{
        "laurel: exact cohomology, residue pairings, duality certificates, boundary\n"
        "spectra, Mellin strip pairings, and ideal boundary conditions for\n"
        "holomorphic families of chain complexes."};
    app.require_subcommand(1);

    struct SubState {
        std::string file;
        int depth = 0;
        unsigned long long seed = 0;
        int degree = 0;
        bool fast = false;
        std::string candidates;
        std::string format = "text";
        CLI::Option* depth_opt = nullptr;
        CLI::Option* seed_opt = nullptr;
        CLI::Option* degree_opt = nullptr;
        CLI::Option* cand_opt = nullptr;
    };

    std::vector<std::pair<CLI::App*, std::shared_ptr<SubState>>> subs;
    auto add_sub = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        auto st = std::make_shared<SubState>();
        sub->add_option("file", st->file, "problem file (JSON), or - for stdin")->required();
        st->depth_opt =
            sub->add_option("--depth", st->depth,
                            "override the germ window depth / reduction order");
        st->seed_opt = sub->add_option("--seed", st->seed, "seed for generator payloads");
        st->degree_opt = sub->add_option("--degree", st->degree, "cohomological degree");
        st->cand_opt = sub->add_option(
            "--candidates", st->candidates,
            "comma-separated exact candidate points, e.g. \"0,1+i,3/2\"");
        sub->add_flag("--fast", st->fast, "disable representative-perturbation checks");
        sub->add_option("--format", st->format, "report format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        subs.emplace_back(sub, st);
        return sub;
    };

    add_sub("validate", "check structural and composition identities");
    add_sub("analyze",
            "boundary spectrum with per-point cohomology, pairings, nondegeneracy");
    add_sub("reduce", "recursive duality certificate via Schur reduction and division");
    add_sub("strip", "assemble the adjoint pairing over Mellin strip points");
    add_sub("ibc", "ideal boundary conditions: containment, charts, quotient cohomology");
    add_sub("generate", "emit a seeded corpus complex with exact expected cohomology");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : laurel::exit_usage;
    }

    for (auto& [sub, st] : subs) {
        if (!sub->parsed()) continue;
        laurel::ProblemOptions overrides;
        if (st->depth_opt->count()) overrides.depth = st->depth;
        if (st->seed_opt->count()) overrides.seed = st->seed;
        if (st->degree_opt->count()) overrides.degree = st->degree;
        if (st->fast) overrides.checked = false;
        if (st->cand_opt->count()) {
            try {
                overrides.candidates = laurel::parse_candidate_list(st->candidates);
            } catch (const laurel::parse_error& e) {
                std::cerr << "input error: " << e.what() << "\n";
                return laurel::exit_usage;
            }
        }
        return laurel::run_cli(sub->get_name(), st->file, overrides, st->format, std::cout,
                               std::cerr);
    }
    return laurel::exit_usage;
}
