#include "cli_app.hpp"

#include <stardomain/approximation.hpp>
#include <stardomain/error.hpp>
#include <stardomain/io.hpp>
#include <stardomain/mesh.hpp>
#include <stardomain/spectra.hpp>
#include <stardomain/transforms.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

namespace stardomain::cli {

namespace {

struct Result {
    std::string text;
    bool pass = true;
};

void error_line(std::ostream& err, std::string_view code, std::string_view message) {
    err << Json{{"error", code}, {"message", message}}.dump() << '\n';
}

std::string resolve_format(const RunConfig& c, const std::string& fallback, bool csv_allowed) {
    const std::string f = c.format.empty() ? fallback : c.format;
    if (f != "json" && f != "csv") throw Error(ErrorCode::InvalidInput, "unknown format \"" + f + "\"");
    if (f == "csv" && !csv_allowed) throw Error(ErrorCode::InvalidInput, c.command + " has no csv output");
    return f;
}

Result analyze(const RunConfig& c) {
    resolve_format(c, "json", false);
    const StarDomain domain = load_domain(c.domain_path);
    const DomainMetrics& m = domain.metrics();
    Json j{{"domain", domain_to_json(domain)},
           {"metrics", metrics_to_json(m)},
           {"convex", domain.is_convex()},
           {"star_shaped_wrt_ball", is_star_shaped_wrt_ball(domain, m.rho * (1.0 - 1e-9))}};
    return {j.dump(2) + "\n", true};
}

Result lipschitz(const RunConfig& c) {
    resolve_format(c, "json", false);
    const StarDomain domain = load_domain(c.domain_path);
    const LipschitzReport g = scalar_lipschitz(ScalarFieldKind::Gauge, domain, c.pairs, c.seed);
    const LipschitzReport s = scalar_lipschitz(ScalarFieldKind::Expansion, domain, c.pairs, c.seed);
    const LipschitzReport d = scalar_lipschitz(ScalarFieldKind::OrientedDistance, domain, c.pairs, c.seed);
    const RadialMap S = RadialMap::expansion(domain);
    const LipschitzReport fwd = empirical_lipschitz(S, StarDomain::ball(1.0), c.pairs, c.seed);
    const LipschitzReport inv = empirical_lipschitz(S, domain, c.pairs, c.seed, true);
    const ChordAngleReport chord = chord_angle_bounds_check(domain, c.pairs, c.seed);
    const bool pass = g.pass && s.pass && d.pass && fwd.pass && inv.pass && chord.pass;
    Json j{{"gauge", lipschitz_to_json(g)},
           {"expansion", lipschitz_to_json(s)},
           {"distance", lipschitz_to_json(d)},
           {"expansion_map", lipschitz_to_json(fwd)},
           {"gauge_map", lipschitz_to_json(inv)},
           {"chord_angle", chord_angle_to_json(chord)},
           {"pass", pass}};
    return {j.dump(2) + "\n", pass};
}

Result approximate(const RunConfig& c) {
    const std::string format = resolve_format(c, "json", true);
    const StarDomain domain = load_domain(c.domain_path);
    const double eps_list[1] = {c.epsilon};
    std::vector<PhiFamilyMember> family = build_phi_family(domain, eps_list);
    const PhiFamilyMember& member = family.front();
    const SmoothApproximation& approx = member.approximation;
    const bool radius_ok = approx.sup_radius_error <= 2.0 * c.epsilon;
    if (format == "csv") {
        std::ostringstream out;
        write_approximation_csv(out, approx, kRadialDistanceSamples);
        return {out.str(), radius_ok};
    }
    const PhiLipschitzCheck phi = check_phi_lipschitz(member, c.pairs, c.seed);
    const bool pass = radius_ok && phi.forward.pass && phi.inverse.pass;
    Json j{{"epsilon", c.epsilon},
           {"sup_radius_error", approx.sup_radius_error},
           {"radius_error_bound", 2.0 * c.epsilon},
           {"large_epsilon_warning", approx.large_epsilon_warning},
           {"mu", member.transfer.mu()},
           {"identity_band", member.identity_band},
           {"phi", lipschitz_to_json(phi.forward)},
           {"phi_inverse", lipschitz_to_json(phi.inverse)},
           {"boundary", domain_to_json(approx.boundary)},
           {"pass", pass}};
    return {j.dump(2) + "\n", pass};
}

Result mesh(const RunConfig& c) {
    resolve_format(c, "json", false);
    const StarDomain domain = load_domain(c.domain_path);
    return {mesh_to_json(domain_mesh(domain, c.rings)).dump() + "\n", true};
}

Result spectrum(const RunConfig& c) {
    resolve_format(c, "json", false);
    const SpectrumReport report = spectrum_report(load_domain(c.domain_path), c.rings);
    bool pass = report.ordering_pass;
    for (const auto& b : report.bounds) pass = pass && b.pass;
    return {spectrum_to_json(report).dump(2) + "\n", pass};
}

Result bounds(const RunConfig& c) {
    resolve_format(c, "json", false);
    const SpectrumReport report = spectrum_report(load_domain(c.domain_path), c.rings, 1);
    bool pass = true;
    for (const auto& b : report.bounds) pass = pass && b.pass;
    Json j{{"bounds", bounds_to_json(report.bounds)},
           {"metrics", metrics_to_json(report.metrics)},
           {"tolerance", report.tolerance},
           {"pass", pass}};
    return {j.dump(2) + "\n", pass};
}

Result converge(const RunConfig& c) {
    const std::string format = resolve_format(c, "csv", true);
    const ConvergenceStudy study = convergence_study(load_domain(c.domain_path), c.eps_list, c.rings);
    if (format == "csv") {
        std::ostringstream out;
        write_convergence_csv(out, study);
        return {out.str(), study.pass};
    }
    Json entries = Json::array();
    for (const auto& e : study.entries)
        entries.push_back({{"epsilon", e.epsilon},
                           {"report", spectrum_to_json(e.report)},
                           {"delta", e.delta},
                           {"hodge_delta", e.hodge_delta},
                           {"sup_radius_error", e.sup_radius_error}});
    Json j{{"eps_list", study.eps_list},
           {"rings", study.rings},
           {"reference", spectrum_to_json(study.reference)},
           {"entries", entries},
           {"pf_monotone", study.pf_monotone},
           {"hodge_monotone", study.hodge_monotone},
           {"final_gap_pass", study.final_gap_pass},
           {"pass", study.pass}};
    return {j.dump(2) + "\n", study.pass};
}

} // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        Result result;
        if (c.command == "analyze")
            result = analyze(c);
        else if (c.command == "lipschitz")
            result = lipschitz(c);
        else if (c.command == "approximate")
            result = approximate(c);
        else if (c.command == "mesh")
            result = mesh(c);
        else if (c.command == "spectrum")
            result = spectrum(c);
        else if (c.command == "converge")
            result = converge(c);
        else if (c.command == "bounds")
            result = bounds(c);
        else
            throw Error(ErrorCode::InvalidInput, "unknown command \"" + c.command + "\"");

        if (c.output_path.empty()) {
            out << result.text;
        } else {
            std::ofstream file(c.output_path, std::ios::binary);
            if (!file) throw Error(ErrorCode::InvalidInput, "cannot write " + c.output_path);
            file << result.text;
        }
        return result.pass ? kPass : kVerificationFailure;
    } catch (const Error& e) {
        error_line(err, to_string(e.code()), e.what());
    } catch (const std::exception& e) {
        error_line(err, "InternalError", e.what());
    }
    return kInputError;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Star-domain geometry, radial maps and de Rham spectra"};
    app.require_subcommand(1);
    RunConfig config;

    struct Subcommand {
        const char* name;
        const char* help;
        bool epsilon;
        bool eps_list;
        bool rings;
        bool pairs;
    };
    const Subcommand subcommands[] = {
        {"analyze", "domain metrics", false, false, false, false},
        {"lipschitz", "sampled Lipschitz constants against theoretical bounds", false, false, false, true},
        {"approximate", "smooth strictly convex approximation and transfer map", true, false, false, true},
        {"mesh", "ring mesh of the domain", false, false, true, false},
        {"spectrum", "PF constants, Hodge spectra, bounds and ordering", false, false, true, false},
        {"converge", "PF constants of the smooth approximations as epsilon decreases", false, true, true, false},
        {"bounds", "explicit PF bounds", false, false, true, false},
    };
    for (const Subcommand& s : subcommands) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--domain", config.domain_path, "domain JSON file")->required();
        sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
        sub->add_option("--output", config.output_path, "output file (default: stdout)");
        sub->add_option("--format", config.format, "json or csv");
        if (s.epsilon) sub->add_option("--epsilon", config.epsilon, "mollifier radius")->capture_default_str();
        if (s.eps_list)
            sub->add_option("--eps", config.eps_list, "descending epsilon list")->delimiter(',')->capture_default_str();
        if (s.rings) sub->add_option("--rings", config.rings, "mesh rings")->capture_default_str()->check(CLI::PositiveNumber);
        if (s.pairs) sub->add_option("--pairs", config.pairs, "sample pairs")->capture_default_str();
        sub->callback([&config, sub] { config.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        error_line(err, "InvalidInput", e.what());
        return kInputError;
    }
    return run(config, out, err);
}

} // namespace stardomain::cli
