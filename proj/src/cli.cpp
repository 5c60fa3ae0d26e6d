#include "limsketch/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "limsketch/builders.hpp"
#include "limsketch/compare.hpp"
#include "limsketch/elim.hpp"
#include "limsketch/error.hpp"
#include "limsketch/kelly.hpp"
#include "limsketch/serialize.hpp"
#include "limsketch/universal.hpp"

namespace limsketch {

namespace {

struct RunConfig {
    std::string sketch;
    std::string presentation;
    std::string model;
    std::string map;
    std::string engine = "elim";
    std::string mode = "pruned";
    std::optional<std::size_t> budget;
    std::size_t max_elements = 200'000;
    std::uint64_t max_tuples = 1'000'000;
    std::uint64_t enum_cap = 1'000'000;
    std::string format = "text";
    std::string out_path;
    std::vector<std::string> builder_args;
};

struct Loaded {
    LimitSketch sketch;
    std::optional<std::string> builder;  // set when the sketch came from a builder
    SetPresentation x;
};

LimitSketch load_sketch(const std::string& ref, std::optional<std::string>& builder) {
    if (std::filesystem::exists(ref)) return sketch_from_json(read_json_file(ref), ref);
    for (const auto& n : builder_names()) {
        if (n == ref) {
            builder = ref;
            return build_sketch(ref);
        }
    }
    throw InputError("'" + ref + "' is neither a readable sketch file nor a builder name");
}

Loaded load_inputs(const RunConfig& cfg) {
    if (cfg.sketch.empty()) throw InputError("--sketch is required");
    if (cfg.presentation.empty()) throw InputError("--presentation is required");
    Loaded l;
    l.sketch = load_sketch(cfg.sketch, l.builder);
    l.x = presentation_from_json(read_json_file(cfg.presentation), l.sketch.base, cfg.presentation);
    return l;
}

std::string sizes(const SetPresentation& x) {
    std::string s;
    for (ObjectIx o = 0; o < x.base().object_count(); ++o) {
        if (o) s += ' ';
        s += x.base().object_name(o) + ":" + std::to_string(x.size(o));
    }
    return s;
}

std::string sizes(const SetPresentation& x, const std::vector<std::vector<Elem>>& members) {
    std::string s;
    for (ObjectIx o = 0; o < x.base().object_count(); ++o) {
        if (o) s += ' ';
        s += x.base().object_name(o) + ":" + std::to_string(members[o].size());
    }
    return s;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

void emit(const RunConfig& cfg, std::ostream& out, const Json& report, const std::string& text_report) {
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) throw InputError("cannot write '" + cfg.out_path + "'");
        f << report.dump(2) << '\n';
    }
    if (cfg.format == "json") {
        out << report.dump(2) << '\n';
    } else {
        out << text_report;
    }
}

ElimOptions elim_options(const RunConfig& cfg, std::size_t default_budget) {
    ElimOptions o;
    o.mode = parse_elim_mode(cfg.mode);
    o.budget = cfg.budget.value_or(default_budget);
    o.max_elements = cfg.max_elements;
    o.max_tuples = cfg.max_tuples;
    return o;
}

KellyOptions kelly_options(const RunConfig& cfg, std::size_t default_budget) {
    KellyOptions o;
    o.budget = cfg.budget.value_or(default_budget);
    o.max_elements = cfg.max_elements;
    o.max_tuples = cfg.max_tuples;
    return o;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    const auto l = load_inputs(cfg);
    const auto r = is_model(l.x, l.sketch, LimitOptions{cfg.max_tuples, {}});
    std::ostringstream t;
    t << "model: " << yes(r.is_model()) << '\n';
    for (const auto& v : r.cones) {
        t << "cone " << v.cone << ": injective " << yes(v.injective);
        if (v.collision) t << " (collision " << v.collision->first << " " << v.collision->second << ")";
        t << ", surjective " << yes(v.surjective);
        if (v.unhit) {
            t << " (unhit (";
            for (std::size_t i = 0; i < v.unhit->size(); ++i) t << (i ? "," : "") << (*v.unhit)[i];
            t << "))";
        }
        t << '\n';
    }
    emit(cfg, out, model_report_to_json(r), t.str());
    return r.is_model() ? kExitOk : kExitNegative;
}

std::string elim_text(const ElimTrace& tr) {
    std::ostringstream t;
    t << "engine elim mode " << to_string(tr.mode) << '\n';
    for (const auto& s : tr.stages) {
        t << "stage " << s.index << " B " << sizes(s.B) << " E " << sizes(s.E) << " core "
          << sizes(s.B, s.core);
        if (s.p) t << " rule1 " << s.rule1_pairs << " rule2 " << s.rule2_pairs;
        t << '\n';
    }
    if (tr.converged) {
        t << "verdict: converged at stage " << tr.converged_at << '\n';
    } else {
        t << "verdict: budget exhausted after stage " << tr.stages.back().index << '\n';
    }
    t << "core: " << sizes(tr.core) << '\n';
    return t.str();
}

std::string kelly_text(const KellyTrace& tr) {
    std::ostringstream t;
    t << "engine kelly\n";
    for (std::size_t n = 0; n < tr.objects.size(); ++n) t << "stage " << n << " " << sizes(tr.objects[n]) << '\n';
    if (tr.converged) {
        t << "verdict: converged at n=" << tr.converged_at << '\n';
    } else {
        t << "verdict: budget exhausted after n=" << tr.objects.size() - 1 << '\n';
    }
    t << "result: " << sizes(tr.result()) << '\n';
    return t.str();
}

int cmd_reflect(const RunConfig& cfg, std::ostream& out) {
    const auto l = load_inputs(cfg);
    if (cfg.engine == "elim") {
        const auto tr = reflect_elim(l.x, l.sketch, elim_options(cfg, 8));
        emit(cfg, out, elim_trace_to_json(tr), elim_text(tr));
        return tr.converged ? kExitOk : kExitBudget;
    }
    if (cfg.engine == "kelly") {
        const auto tr = reflect_kelly(l.x, l.sketch, kelly_options(cfg, 8));
        emit(cfg, out, kelly_trace_to_json(tr), kelly_text(tr));
        return tr.converged ? kExitOk : kExitBudget;
    }
    throw InputError("unknown engine '" + cfg.engine + "' (expected elim or kelly)");
}

Json iso_json(const IsoVerdict& v) {
    Json j;
    j["iso"] = v.iso;
    if (!v.detail.empty()) j["detail"] = v.detail;
    return j;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    const auto l = load_inputs(cfg);
    ElimOptions eo = elim_options(cfg, 3);
    eo.mode = ElimMode::faithful;
    const auto faithful = reflect_elim(l.x, l.sketch, eo);
    const auto seq = kelly_sequence(l.x, l.sketch, faithful.stages.size() - 1, kelly_options(cfg, 8));
    const auto alpha = build_alpha(faithful, seq, l.sketch, eo.budget);

    Json j;
    j["alpha"] = alpha_to_json(alpha, faithful, seq);
    std::ostringstream t;
    for (std::size_t i = 0; i < alpha.alpha.size(); ++i) {
        t << "alpha stage " << i << ": natural " << yes(alpha.naturality[i].ok);
        if (i > 0) t << ", commutes " << yes(alpha.commutation[i - 1].ok);
        t << '\n';
    }
    t << "alpha: " << (alpha.ok() ? "ok" : "failed") << '\n';

    int code = alpha.ok() ? kExitOk : kExitNegative;
    if (!faithful.converged) {
        t << "iso elim/kelly: faithful elimination did not converge within " << eo.budget << " stages\n";
        j["iso"] = Json();
        emit(cfg, out, j, t.str());
        return kExitBudget;
    }
    const LimitOptions lo{cfg.max_tuples, {}};
    const auto kelly = reflect_kelly(l.x, l.sketch, kelly_options(cfg, 8));
    ElimOptions po = elim_options(cfg, 8);
    po.mode = ElimMode::pruned;
    po.budget = cfg.budget ? std::max<std::size_t>(*cfg.budget, 8) : 8;
    const auto pruned = reflect_elim(l.x, l.sketch, po);
    if (!kelly.converged || !pruned.converged) {
        t << "iso: a reference construction did not converge\n";
        j["iso"] = Json();
        emit(cfg, out, j, t.str());
        return kExitBudget;
    }
    const auto ek = reflector_iso_check(faithful, kelly, l.sketch, lo);
    const auto fp = reflector_iso_check(faithful, pruned, l.sketch, lo);
    j["iso"] = {{"elim_kelly", iso_json(ek)}, {"faithful_pruned", iso_json(fp)}};
    t << "iso elim/kelly: " << yes(ek.iso) << " (core " << sizes(faithful.core) << ", kelly "
      << sizes(kelly.result()) << ")\n";
    t << "iso faithful/pruned: " << yes(fp.iso) << " (pruned core " << sizes(pruned.core) << ")\n";
    if (!ek.iso || !fp.iso) code = kExitNegative;
    emit(cfg, out, j, t.str());
    return code;
}

int cmd_universal(const RunConfig& cfg, std::ostream& out) {
    const auto l = load_inputs(cfg);
    if (cfg.model.empty()) throw InputError("--model is required");
    if (cfg.map.empty()) throw InputError("--map is required");
    const auto m = presentation_from_json(read_json_file(cfg.model), l.sketch.base, cfg.model);
    const auto f = nat_trans_from_json(read_json_file(cfg.map), l.x, m, cfg.map);
    const LimitOptions lo{cfg.max_tuples, {}};
    for (const auto& v : is_model(m, l.sketch, lo).cones) {
        if (!v.injective || !v.surjective) {
            throw PreconditionError("not a model: cone " + v.cone + " has a gap map that is not " +
                                    (v.injective ? "surjective" : "injective"));
        }
    }

    FactorisationResult fr;
    UniquenessVerdict uv;
    SetPresentation core;
    if (cfg.engine == "elim") {
        const auto tr = reflect_elim(l.x, l.sketch, elim_options(cfg, 8));
        if (!tr.converged) throw BudgetExceeded("reflection did not converge within the stage budget");
        fr = solve_factorisation(tr, f, m, l.sketch, lo);
        uv = check_uniqueness(tr, f, m, cfg.enum_cap);
        core = tr.core;
    } else if (cfg.engine == "kelly") {
        const auto tr = reflect_kelly(l.x, l.sketch, kelly_options(cfg, 8));
        if (!tr.converged) throw BudgetExceeded("reflection did not converge within the stage budget");
        fr = solve_factorisation(tr, f, m, l.sketch, lo);
        uv = check_uniqueness(tr.result(), tr.rho, f, m, cfg.enum_cap);
        core = tr.result();
    } else {
        throw InputError("unknown engine '" + cfg.engine + "' (expected elim or kelly)");
    }

    Json j;
    j["exists"] = true;
    j["commutes"] = fr.commutes;
    j["uniqueness"] = to_string(uv.verdict);
    j["search_space"] = uv.search_space;
    j["g"] = nat_trans_to_json(core, m, fr.g)["components"];
    std::ostringstream t;
    t << "exists: yes\n";
    t << "commutes: " << yes(fr.commutes) << '\n';
    t << "uniqueness: " << to_string(uv.verdict) << '\n';
    t << "search space: " << uv.search_space << '\n';
    emit(cfg, out, j, t.str());
    const bool ok = fr.commutes && (uv.verdict == Uniqueness::unique || uv.verdict == Uniqueness::inconclusive);
    return ok ? kExitOk : kExitNegative;
}

int cmd_builders(const RunConfig& cfg, std::ostream& out) {
    const auto& a = cfg.builder_args;
    if (a.empty()) throw InputError("builders: expected 'list' or 'emit <name>'");
    if (a[0] == "list" && a.size() == 1) {
        if (cfg.format == "json") {
            out << Json(builder_names()).dump(2) << '\n';
        } else {
            for (const auto& n : builder_names()) out << n << '\n';
        }
        return kExitOk;
    }
    if (a[0] == "emit" && a.size() == 2) {
        const auto j = sketch_to_json(build_sketch(a[1]));
        if (!cfg.out_path.empty()) {
            std::ofstream f(cfg.out_path);
            if (!f) throw InputError("cannot write '" + cfg.out_path + "'");
            f << j.dump(2) << '\n';
        } else {
            out << j.dump(2) << '\n';
        }
        return kExitOk;
    }
    throw InputError("builders: expected 'list' or 'emit <name>'");
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite limit sketches: model checking and reflection"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_inputs) {
        if (needs_inputs) {
            sub->add_option("--sketch", cfg.sketch, "sketch JSON file or builder name")->required();
            sub->add_option("--presentation", cfg.presentation, "presentation JSON file")->required();
        }
        sub->add_option("--engine", cfg.engine, "elim or kelly")->check(CLI::IsMember({"elim", "kelly"}));
        sub->add_option("--mode", cfg.mode, "faithful or pruned")->check(CLI::IsMember({"faithful", "pruned"}));
        sub->add_option("--budget", cfg.budget, "stage budget");
        sub->add_option("--max-elements", cfg.max_elements, "element cap per object")->check(CLI::PositiveNumber);
        sub->add_option("--max-tuples", cfg.max_tuples, "limit enumeration cap")->check(CLI::PositiveNumber);
        sub->add_option("--enum-cap", cfg.enum_cap, "uniqueness search cap")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", cfg.out_path, "also write the JSON report here");
    };
    auto* check = app.add_subcommand("check", "is the presentation a model?");
    add_common(check, true);
    auto* reflect = app.add_subcommand("reflect", "compute the reflection into models");
    add_common(reflect, true);
    auto* compare = app.add_subcommand("compare", "compare elimination with Kelly's construction");
    add_common(compare, true);
    auto* universal = app.add_subcommand("universal", "factorise a map into a model and check uniqueness");
    add_common(universal, true);
    universal->add_option("--model", cfg.model, "model JSON file")->required();
    universal->add_option("--map", cfg.map, "map JSON file")->required();
    auto* builders = app.add_subcommand("builders", "list or emit the built-in sketches");
    add_common(builders, false);
    builders->add_option("args", cfg.builder_args, "list | emit <name>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (*check) return cmd_check(cfg, out);
        if (*reflect) return cmd_reflect(cfg, out);
        if (*compare) return cmd_compare(cfg, out);
        if (*universal) return cmd_universal(cfg, out);
        if (*builders) return cmd_builders(cfg, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const LimsketchError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNegative;
    }
    return kExitInput;
}

}  // namespace limsketch
