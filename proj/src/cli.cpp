// SPDX-License-Identifier: Apache-2.0
//
// spectra: optimal spectrum management for Gaussian interference channels
// Copyright (C) 2026 The spectra authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "spectra/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "spectra/concave_envelope.hpp"
#include "spectra/fdma_analysis.hpp"
#include "spectra/oracle.hpp"
#include "spectra/spec_io.hpp"
#include "spectra/spectrum_optimizer.hpp"
#include "spectra/symmetric_two_user.hpp"

namespace spectra::cli
{

namespace
{

using nlohmann::json;

struct InputError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

json timestamp()
{
    const char *epoch = std::getenv("SOURCE_DATE_EPOCH");
    if (epoch == nullptr || *epoch == '\0')
        return nullptr;
    char *end = nullptr;
    const long long secs = std::strtoll(epoch, &end, 10);
    if (*end != '\0')
        return nullptr;
    const std::time_t t = static_cast<std::time_t>(secs);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

json manifest(const CLI::App &sub, const std::string &input, const std::vector<std::string> &outputs)
{
    json overrides = json::object();
    for (const CLI::Option *opt : sub.get_options())
    {
        if (opt->count() == 0)
            continue;
        std::string name = opt->get_name();
        name.erase(0, name.find_first_not_of('-'));
        if (name == "help" || name == "spec")
            continue;
        const auto &res = opt->results();
        overrides[name] = res.size() == 1 ? json(res.front()) : json(res);
    }
    return {{"subcommand", sub.get_name()}, {"input", input.empty() ? json(nullptr) : json(input)},
            {"overrides", overrides},       {"outputs", outputs},
            {"version", kToolVersion},      {"timestamp", timestamp()}};
}

json document(const CLI::App &sub, const std::string &input, const std::vector<std::string> &outputs)
{
    return {{"schema", kSchemaVersion}, {"manifest", manifest(sub, input, outputs)}};
}

std::ofstream open_output(const std::string &path)
{
    std::ofstream f(path);
    if (!f)
        throw InputError("cannot write " + path);
    return f;
}

json to_json(const OptimizationResult &r)
{
    return {{"value", r.value},
            {"rates", r.rates},
            {"power", r.power},
            {"prices", r.prices},
            {"duality_gap", r.duality_gap},
            {"allocation", spectra::to_json(r.allocation)},
            {"diagnostics",
             {{"iterations", r.diagnostics.iterations},
              {"primal_residual", r.diagnostics.primal_residual},
              {"slackness_residual", r.diagnostics.slackness_residual},
              {"degenerate_optimum", r.diagnostics.degenerate_optimum},
              {"notes", r.diagnostics.notes}}}};
}

bool has_tangency(double alpha) { return alpha > 0.0 && alpha < kStrongCoupling; }

// ---------------------------------------------------------------------------------------

struct Options
{
    std::string spec;
    std::vector<double> budgets;
    std::size_t grid = 0;
    std::string csv;
    std::string facets;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double power = std::numeric_limits<double>::quiet_NaN();
    std::size_t csv_points = 401;
    double csv_max = 0.0;
    std::size_t levels = 0;
    std::size_t splits = 0;
    std::uint64_t seed = 0;
    std::vector<double> alphas{0.1};
    std::size_t alpha_points = 99;
    std::string out;
};

int fdma_check(const CLI::App &sub, const Options &o, std::ostream &out)
{
    const auto spec = load_channel_spec(o.spec);
    const auto d = fdma_decision(spec);
    json verdicts = json::array();
    for (const auto &v : d.verdicts)
        verdicts.push_back({{"i", v.i}, {"j", v.j}, {"certified", v.certified}, {"per_subchannel", v.per_subchannel}});
    auto doc = document(sub, o.spec, {});
    doc["users"] = spec.users();
    doc["subchannels"] = spec.subchannels();
    doc["certified_pairs"] = d.pairs;
    doc["per_subchannel"] = d.per_subchannel;
    doc["verdicts"] = verdicts;
    out << doc.dump(2) << "\n";
    return kOk;
}

void write_curves(std::ostream &f, double alpha, double p_max, std::size_t points)
{
    std::optional<TangencySolution> t;
    if (has_tangency(alpha))
        t = solve_tangency(alpha);
    for (std::size_t k = 0; k < points; ++k)
    {
        const double p = p_max * static_cast<double>(k) / static_cast<double>(points - 1);
        const double r = t ? r_star_flat(*t, p).value : r_star_flat(alpha, p).value;
        f << format_number(alpha) << ',' << format_number(p) << ',' << format_number(f_star(alpha, p)) << ','
          << format_number(h_star(p)) << ',' << format_number(r) << '\n';
    }
}

double curve_span(double alpha, double power)
{
    double span = std::max(1.0, 2.0 * power);
    if (has_tangency(alpha))
        span = std::max(span, 2.0 * solve_tangency(alpha).p_h);
    return span;
}

int sym2(const CLI::App &sub, const Options &o, std::ostream &out)
{
    if (!(o.power >= 0.0) || !std::isfinite(o.power))
        throw InputError("--power must be a finite non-negative number");
    if (o.csv_points < 2)
        throw InputError("--csv-points must be at least 2");
    std::vector<std::string> outputs;
    if (!o.csv.empty())
        outputs.push_back(o.csv);
    auto doc = document(sub, o.spec, outputs);
    std::vector<double> curve_alphas;

    if (o.spec.empty())
    {
        if (!(o.alpha >= 0.0) || !std::isfinite(o.alpha))
            throw InputError("sym2 needs --alpha (flat mode) or --spec (selective mode)");
        const auto env = r_star_flat(o.alpha, o.power);
        doc["alpha"] = o.alpha;
        doc["power"] = o.power;
        doc["value"] = env.value;
        doc["regime"] = to_string(env.regime);
        doc["fdma_fraction"] = env.lambda;
        doc["p_0"] = o.alpha > 0.0 && o.alpha < kStrongCoupling ? json(fdma_power_region_threshold(o.alpha)) : json(nullptr);
        if (has_tangency(o.alpha))
        {
            const auto t = solve_tangency(o.alpha);
            doc["p_f"] = t.p_f;
            doc["p_h"] = t.p_h;
            if (t.roots.size() > 1)
                doc["tangency_roots"] = t.roots;
        }
        else
        {
            doc["p_f"] = nullptr;
            doc["p_h"] = nullptr;
        }
        doc["allocation"] = to_json(build_allocation_flat(o.alpha, o.power));
        curve_alphas.push_back(o.alpha);
    }
    else
    {
        const auto spec = load_channel_spec(o.spec);
        const auto r = solve_symmetric_selective(spec, o.power);
        std::vector<double> psd_sum(spec.subchannels(), 0.0);
        for (const auto &p : r.allocation.pieces())
            psd_sum[spec.locate(p.start, p.end)] += p.width() * (p.psd[0] + p.psd[1]);
        json subs = json::array();
        for (std::size_t m = 0; m < spec.subchannels(); ++m)
        {
            const double alpha = spec.alpha(m, 0, 1);
            const double n = spec.noise(m, 0);
            const double load = psd_sum[m] / spec.bandwidth(m) / n;
            json s{{"bandwidth", spec.bandwidth(m)},
                   {"alpha", alpha},
                   {"noise", n},
                   {"normalized_power", load},
                   {"regime", to_string(r_star_flat(alpha, load).regime)}};
            if (has_tangency(alpha))
            {
                const auto t = solve_tangency(alpha);
                s["p_f"] = t.p_f;
                s["p_h"] = t.p_h;
            }
            else
            {
                s["p_f"] = nullptr;
                s["p_h"] = nullptr;
            }
            subs.push_back(std::move(s));
            if (std::find(curve_alphas.begin(), curve_alphas.end(), alpha) == curve_alphas.end())
                curve_alphas.push_back(alpha);
        }
        doc["power"] = o.power;
        doc["value"] = r.value;
        doc["subchannels"] = subs;
        doc["result"] = to_json(r);
        doc["allocation"] = doc["result"]["allocation"];
    }

    if (!o.csv.empty())
    {
        auto f = open_output(o.csv);
        f << "alpha,p,f_star,h_star,r_star\n";
        for (double a : curve_alphas)
            write_curves(f, a, o.csv_max > 0.0 ? o.csv_max : curve_span(a, o.power), o.csv_points);
    }
    out << doc.dump(2) << "\n";
    return kOk;
}

ChannelSpec load_with_budgets(const Options &o)
{
    auto spec = load_channel_spec(o.spec);
    if (!o.budgets.empty())
    {
        if (o.budgets.size() != spec.users())
            throw InputError("--budgets needs " + std::to_string(spec.users()) + " values");
        spec = spec.with_budgets(o.budgets);
    }
    return spec;
}

int optimize(const CLI::App &sub, const Options &o, std::ostream &out)
{
    const auto spec = load_with_budgets(o);
    const auto grid = default_grid(spec, o.grid);
    const auto hulls = build_hulls(spec, grid);
    const auto result = solve(spec, hulls);

    std::vector<std::string> outputs;
    if (!o.csv.empty())
    {
        const std::string alloc_path = o.csv + "_allocation.csv";
        auto f = open_output(alloc_path);
        f << "f";
        for (std::size_t i = 0; i < spec.users(); ++i)
            f << ",P_" << i + 1;
        f << '\n';
        // Two samples per piece so the CSV draws as a step function.
        for (const auto &p : result.allocation.pieces())
            for (double x : {p.start, p.end})
            {
                f << format_number(x);
                for (double v : p.psd)
                    f << ',' << format_number(v);
                f << '\n';
            }
        outputs.push_back(alloc_path);
        for (std::size_t m = 0; m < spec.subchannels(); ++m)
        {
            const std::string path = o.csv + "_hull_" + std::to_string(m) + ".csv";
            auto h = open_output(path);
            write_hull_csv(h, *hulls[m]);
            outputs.push_back(path);
        }
    }
    if (!o.facets.empty())
    {
        json dump = json::array();
        for (const auto &h : hulls)
            dump.push_back(to_json(*h));
        auto f = open_output(o.facets);
        f << dump.dump() << '\n';
        outputs.push_back(o.facets);
    }

    auto doc = document(sub, o.spec, outputs);
    doc["grid"] = {{"points", grid.points}, {"upper", grid.upper}, {"box_factor", grid.box_factor}};
    doc["result"] = to_json(result);
    out << doc.dump(2) << "\n";
    return kOk;
}

int verify(const CLI::App &sub, const Options &o, std::ostream &out)
{
    auto doc = document(sub, o.spec, {});
    const auto props = property_suite(o.seed);
    bool passed = props.passed();
    doc["seed"] = o.seed;
    doc["properties"] = spectra::to_json(props)["properties"];
    if (!o.spec.empty())
    {
        const auto spec = load_with_budgets(o);
        auto oracle = default_oracle(spec.users());
        if (o.levels != 0)
            oracle.levels = o.levels;
        if (o.splits != 0)
            oracle.splits = o.splits;
        if (oracle.levels < 2 || oracle.splits < 1)
            throw InputError("--levels must be at least 2 and --splits at least 1");
        json checks = json::array();
        for (const auto &c : spec_checks(spec, default_grid(spec, o.grid), oracle))
        {
            passed = passed && c.passed;
            checks.push_back(spectra::to_json(c));
        }
        doc["oracle"] = {{"levels", oracle.levels}, {"splits", oracle.splits}, {"cap", oracle.cap}};
        doc["checks"] = checks;
    }
    doc["passed"] = passed;
    out << doc.dump(2) << "\n";
    return passed ? kOk : kVerificationFailed;
}

int sweep(const CLI::App &sub, const Options &o, std::ostream &out)
{
    if (o.alpha_points < 2 || o.csv_points < 2)
        throw InputError("--alpha-points and --points must be at least 2");
    for (double a : o.alphas)
        if (!(a >= 0.0) || !std::isfinite(a))
            throw InputError("--alpha values must be finite and non-negative");
    const std::string region_path = o.out + "_region.csv";
    const std::string curves_path = o.out + "_curves.csv";

    auto region = open_output(region_path);
    region << "alpha,p_0,p_f,p_h\n";
    for (std::size_t k = 0; k < o.alpha_points; ++k)
    {
        // Open interval (0, 1/2), endpoints excluded.
        const double alpha = kStrongCoupling * static_cast<double>(k + 1) / static_cast<double>(o.alpha_points + 1);
        const auto t = solve_tangency(alpha);
        region << format_number(alpha) << ',' << format_number(t.p_0) << ',' << format_number(t.p_f) << ','
               << format_number(t.p_h) << '\n';
    }
    auto curves = open_output(curves_path);
    curves << "alpha,p,f_star,h_star,r_star\n";
    for (double a : o.alphas)
        write_curves(curves, a, o.csv_max > 0.0 ? o.csv_max : curve_span(a, 0.0), o.csv_points);

    auto doc = document(sub, "", {region_path, curves_path});
    doc["region_rows"] = o.alpha_points;
    doc["curve_rows"] = o.alphas.size() * o.csv_points;
    out << doc.dump(2) << "\n";
    return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Optimal spectrum management for Gaussian interference channels", "spectra"};
    app.failure_message(CLI::FailureMessage::help);
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Options o;

    auto *fdma = app.add_subcommand("fdma-check", "Per-pair FDMA sufficient condition on every sub-channel");
    fdma->add_option("--spec", o.spec, "Channel JSON")->required();

    auto *sym = app.add_subcommand("sym2", "Two-user symmetric closed-form solver");
    sym->add_option("--alpha", o.alpha, "Normalized cross gain (flat mode)");
    sym->add_option("--spec", o.spec, "Symmetric two-user channel JSON (selective mode)");
    sym->add_option("--power", o.power, "Sum power budget")->required();
    sym->add_option("--csv", o.csv, "Write p, f*, h*, r* curves to this file");
    sym->add_option("--csv-points", o.csv_points, "Samples per curve");
    sym->add_option("--csv-max", o.csv_max, "Largest p in the curves");

    auto *opt = app.add_subcommand("optimize", "Weighted sum-rate optimum over grid envelopes");
    opt->add_option("--spec", o.spec, "Channel JSON")->required();
    opt->add_option("--grid", o.grid, "Breakpoints per user axis");
    opt->add_option("--budgets", o.budgets, "Override power budgets, comma separated")->delimiter(',');
    opt->add_option("--csv", o.csv, "Write PREFIX_allocation.csv and PREFIX_hull_<m>.csv");
    opt->add_option("--facets", o.facets, "Write hull facets as JSON");

    auto *ver = app.add_subcommand("verify", "Property suite plus oracle and duality checks");
    ver->add_option("--spec", o.spec, "Channel JSON; omit to run only the property suite");
    ver->add_option("--levels", o.levels, "Oracle PSD levels per user");
    ver->add_option("--splits", o.splits, "Oracle sub-bands per sub-channel");
    ver->add_option("--seed", o.seed, "Property suite seed");
    ver->add_option("--grid", o.grid, "Breakpoints per user axis");
    ver->add_option("--budgets", o.budgets, "Override power budgets, comma separated")->delimiter(',');

    auto *swp = app.add_subcommand("sweep", "Region boundary and envelope curves as CSV");
    swp->add_option("--out", o.out, "Output prefix")->required();
    swp->add_option("--alpha", o.alphas, "Cross gains for the curves")->delimiter(',');
    swp->add_option("--alpha-points", o.alpha_points, "Samples of the region boundary");
    swp->add_option("--points", o.csv_points, "Samples per curve");
    swp->add_option("--power-max", o.csv_max, "Largest p in the curves");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try
    {
        if (fdma->parsed())
            return fdma_check(*fdma, o, out);
        if (sym->parsed())
            return sym2(*sym, o, out);
        if (opt->parsed())
            return optimize(*opt, o, out);
        if (ver->parsed())
            return verify(*ver, o, out);
        return sweep(*swp, o, out);
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

} // namespace spectra::cli
