#include <cmath>
#include <cstring>
#include <iostream>
#include <memory>
#include <sstream>
#include <numbers>
#include <thread>

#include "CLI11.hpp"
#include "cli_commands.hpp"
#include "cli_io.hpp"

namespace {

// values from --config FILE are spliced in right after the subcommand so later flags win
std::vector<std::string> splice_config(std::vector<std::string> args)
{
    std::string path;
    for (size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty())
        return args;
    size_t sub = 1;
    while (sub < args.size() && args[sub].rfind("-", 0) == 0)
        ++sub;
    if (sub == args.size())
        throw cli::usage_error("--config needs a subcommand");
    std::vector<std::string> extra;
    for (auto& [k, v] : cli::read_key_values(path))
        extra.push_back("--" + k + "=" + v);
    args.insert(args.begin() + sub + 1, extra.begin(), extra.end());
    return args;
}

std::string config_hash(const std::string& name, const CLI::App* sub)
{
    std::string all = "command=" + name + "\n";
    std::istringstream in(sub->config_to_str(true, false));
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("out=", 0) == 0 || line.rfind("jobs=", 0) == 0 || line.rfind("config=", 0) == 0)
            continue;
        all += line + "\n";
    }
    return cli::hex64(cli::fnv1a(all));
}

void add_domain(CLI::App* s, cli::DomainArgs& d)
{
    s->add_option("--domain", d.domain,
                  "disc, ellipse, rectangle, polygon, sector, or a descriptor file (kind = ..., see README)")
        ->capture_default_str();
    s->add_option("--a", d.a, "ellipse semi-axis")->capture_default_str();
    s->add_option("--aspect", d.aspect, "rectangle side ratio l/L in (0, 1]")->capture_default_str();
    s->add_option("--m", d.m, "regular polygon sides or sector order")->capture_default_str();
}

void add_common(CLI::App* s, cli::Common& c)
{
    s->add_option("--out", c.out, "output path (stdout when omitted); relative paths go under $VPATCH_OUTDIR");
    s->add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
    s->add_option("--config", c.config, "key = value file; flags override file values override defaults");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"vortex patch desingularization toolkit", "vpatch"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.footer("Config precedence: command-line flags > --config file > defaults.\n"
               "Exit codes: 0 success, 1 numerical or domain error, 2 usage error.");

    cli::Common common;
    common.jobs = std::max(1u, std::thread::hardware_concurrency());
    cli::DomainArgs dom;

    cli::RobinArgs robin;
    auto* s_robin = app.add_subcommand("robin", "Robin function and conformal radius on a grid");
    add_domain(s_robin, dom);
    add_common(s_robin, common);
    s_robin->add_option("--n", robin.n, "grid points per side")->capture_default_str();

    cli::OrbitArgs orbit;
    auto* s_orbit = app.add_subcommand("orbit", "trace one point-vortex orbit");
    add_domain(s_orbit, dom);
    add_common(s_orbit, common);
    s_orbit->add_option("--lambda", orbit.lambda, "energy level")->required();
    s_orbit->add_option("--samples", orbit.samples, "samples per period")->capture_default_str();

    cli::RangeArgs prange;
    auto* s_pscan = app.add_subcommand("period-scan", "period function and its derivative over a level range");
    add_domain(s_pscan, dom);
    add_common(s_pscan, common);
    s_pscan->add_option("--lambda-min", prange.lo)->required();
    s_pscan->add_option("--lambda-max", prange.hi)->required();
    s_pscan->add_option("--n", prange.n, "number of levels")->capture_default_str();

    cli::RangeArgs mrange;
    auto* s_mono = app.add_subcommand("monodromy", "monodromy trace scan and spectral verdict");
    add_domain(s_mono, dom);
    add_common(s_mono, common);
    s_mono->add_option("--lambda-min", mrange.lo)->required();
    s_mono->add_option("--lambda-max", mrange.hi)->required();
    s_mono->add_option("--n", mrange.n, "number of levels")->capture_default_str();
    s_mono->add_option("--threshold", mrange.threshold, "margin for trace != 2")->capture_default_str();
    s_mono->add_flag("--no-refine", mrange.no_refine, "skip the refinement pass");

    double adm_tol = 1e-8;
    auto* s_adm = app.add_subcommand("admissibility", "Schwarzian non-degeneracy check");
    add_domain(s_adm, dom);
    add_common(s_adm, common);
    s_adm->add_option("--tol", adm_tol, "distance below which the domain is rejected")->capture_default_str();

    cli::ContourArgs resid;
    auto* s_res = app.add_subcommand("residual", "contour functional for a zero or approximate deformation");
    add_domain(s_res, dom);
    add_common(s_res, common);
    s_res->add_option("--lambda", resid.lambda)->required();
    s_res->add_option("--eps", resid.eps)->required();
    s_res->add_option("--M", resid.M, "grid along the orbit (power of two)")->capture_default_str();
    s_res->add_option("--N", resid.N, "grid around the patch (power of two)")->capture_default_str();
    s_res->add_option("--state", resid.state, "zero, approx or corrected")
        ->check(CLI::IsMember({"zero", "approx", "corrected"}))
        ->capture_default_str();

    cli::ContourArgs approx;
    auto* s_apx = app.add_subcommand("approx", "approximate deformation r on the torus grid");
    add_domain(s_apx, dom);
    add_common(s_apx, common);
    s_apx->add_option("--lambda", approx.lambda)->required();
    s_apx->add_option("--eps", approx.eps)->required();
    s_apx->add_option("--M", approx.M)->capture_default_str();
    s_apx->add_option("--N", approx.N)->capture_default_str();
    s_apx->add_flag("--correction", approx.correction, "include the next-order correction");

    cli::PatchArgs patch;
    auto* s_patch = app.add_subcommand("patch", "evolve a circular patch placed on an orbit");
    add_domain(s_patch, dom);
    add_common(s_patch, common);
    s_patch->add_option("--lambda", patch.lambda)->required();
    s_patch->add_option("--eps", patch.eps)->required();
    s_patch->add_option("--nodes", patch.nodes)->capture_default_str();
    s_patch->add_option("--steps-per-period", patch.steps_per_period)->capture_default_str();
    s_patch->add_option("--periods", patch.periods)->capture_default_str();
    s_patch->add_option("--record-every", patch.record_every, "steps between CSV rows")->capture_default_str();

    cli::RigidArgs rigid;
    auto* s_rigid = app.add_subcommand("rigid", "rigidly rotating patch in the unit disc");
    add_common(s_rigid, common);
    s_rigid->add_option("--q", rigid.q, "distance of the patch from the centre")->required();
    s_rigid->add_option("--eps", rigid.eps)->required();
    s_rigid->add_option("--modes", rigid.modes)->capture_default_str();

    cli::DuplicateArgs dup;
    auto* s_dup = app.add_subcommand("duplicate", "reflection identities and mirrored dynamics");
    add_common(s_dup, common);
    s_dup->add_option("--cell", dup.cell, "half-disc or quadrant")
        ->check(CLI::IsMember({"half-disc", "quadrant"}))
        ->capture_default_str();
    s_dup->add_option("--samples", dup.samples)->capture_default_str();
    s_dup->add_option("--seed", dup.seed)->capture_default_str();
    s_dup->add_flag("--evolve", dup.evolve, "also evolve the mirrored pair and compare");
    s_dup->add_option("--eps", dup.eps)->capture_default_str();
    s_dup->add_option("--nodes", dup.nodes)->capture_default_str();
    s_dup->add_option("--level-offset", dup.level_offset, "level above the critical one")->capture_default_str();
    s_dup->add_option("--fraction", dup.fraction, "fraction of the period to evolve")->capture_default_str();
    s_dup->add_option("--steps", dup.steps)->capture_default_str();

    auto* s_self = app.add_subcommand("selftest", "run the invariant suite and print a pass/fail table");
    add_common(s_self, common);

    std::vector<std::string> args(argv, argv + argc);
    try {
        args = splice_config(args);
        std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: status=usage code=2 message=\"" << e.what() << "\"\n";
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    std::string hash = config_hash(name, sub);
    try {
        if (name == "robin")
            return cli::cmd_robin(dom, robin, common, hash);
        if (name == "orbit")
            return cli::cmd_orbit(dom, orbit, common, hash);
        if (name == "period-scan")
            return cli::cmd_period_scan(dom, prange, common, hash);
        if (name == "monodromy")
            return cli::cmd_monodromy(dom, mrange, common, hash);
        if (name == "admissibility")
            return cli::cmd_admissibility(dom, adm_tol, common, hash);
        if (name == "residual")
            return cli::cmd_residual(dom, resid, common, hash);
        if (name == "approx")
            return cli::cmd_approx(dom, approx, common, hash);
        if (name == "patch")
            return cli::cmd_patch(dom, patch, common, hash);
        if (name == "rigid")
            return cli::cmd_rigid(rigid, common, hash);
        if (name == "duplicate")
            return cli::cmd_duplicate(dup, common, hash);
        return cli::cmd_selftest(common, hash);
    } catch (const cli::call_error& e) {
        bool usage = e.status == VP_ERR_INVALID_ARGUMENT;
        std::cerr << "error: status=" << vp_status_name(e.status) << " code=" << e.status << " command=" << name
                  << " message=\"" << e.what() << "\"\n";
        return usage ? 2 : 1;
    } catch (const cli::usage_error& e) {
        std::cerr << "error: status=usage code=" << VP_ERR_INVALID_ARGUMENT << " command=" << name << " message=\""
                  << e.what() << "\"\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: status=internal code=" << VP_ERR_INTERNAL << " command=" << name << " message=\""
                  << e.what() << "\"\n";
        return 1;
    }
}
