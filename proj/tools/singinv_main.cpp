#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "singinv/catalog.hpp"
#include "singinv/errors.hpp"
#include "singinv/moduli.hpp"
#include "singinv/parse.hpp"
#include "singinv/verify.hpp"

using nlohmann::json;
using namespace singinv;

namespace {

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(csv);
    while (std::getline(is, item, ',')) {
        // trim
        std::size_t a = item.find_first_not_of(" \t");
        std::size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

struct GlobalOpts {
    std::string catalog_file;
    bool json_out = false;
    Catalog catalog = Catalog::builtin();

    void load_catalog() {
        if (catalog_file.empty()) return;
        std::ifstream in(catalog_file);
        if (!in) throw InputError("cannot open catalog file: " + catalog_file);
        std::stringstream ss;
        ss << in.rdbuf();
        catalog = Catalog::parse(ss.str());
    }
};

json genericity_json(const std::vector<ParamPoly>& locus) {
    json arr = json::array();
    for (const auto& p : locus) arr.push_back(p.str());
    return arr;
}

void emit(const GlobalOpts& g, const std::string& command, const json& inputs,
          const json& outputs, const json& genericity) {
    if (g.json_out) {
        json doc;
        doc["command"] = command;
        doc["inputs"] = inputs;
        doc["outputs"] = outputs;
        doc["genericity"] = genericity;
        doc["status"] = "ok";
        std::cout << doc.dump(2) << "\n";
    }
}

int run_j(GlobalOpts& g, const std::string& kind, const std::string& poly,
          const std::string& vars_csv, const std::string& params_csv) {
    std::vector<std::string> vars = split_names(vars_csv);
    if (vars.empty()) vars = kind == "cubic"
                                 ? std::vector<std::string>{"x", "y", "z"}
                                 : std::vector<std::string>{"x", "y"};
    std::vector<std::string> params = split_names(params_csv);
    HomogeneousForm p = HomogeneousForm::parse(poly, vars, params);
    const char* ratio = kind == "cubic" ? "j_ternary" : "j_quartic";
    if ((kind == "cubic" && (p.nvars() != 3 || p.degree() != 3)) ||
        (kind == "quartic" && (p.nvars() != 2 || p.degree() != 4)))
        throw InputError("polynomial does not have the requested shape");
    RatFunc j = g.catalog.evaluate_absolute(ratio, p);
    if (g.json_out) {
        emit(g, "j", {{"kind", kind}, {"polynomial", poly}},
             json::array({{{"name", "j"}, {"value", j.str()}}}),
             json::array());
    } else {
        std::cout << j.str() << "\n";
    }
    return 0;
}

json pipeline_outputs(const PipelineResult& res) {
    json outputs = json::array();
    outputs.push_back({{"name", "dimension"},
                       {"value", std::to_string(res.dimension)}});
    json basis = json::array();
    for (const auto& b : res.basis_monomials) basis.push_back(b);
    outputs.push_back({{"name", "basis"}, {"value", basis}});
    outputs.push_back({{"name", "socle_degree"},
                       {"value", std::to_string(res.socle_degree)}});
    outputs.push_back({{"name", "embedding_dimension"},
                       {"value", std::to_string(res.embedding_dim)}});
    outputs.push_back({{"name", "multiplication_form"},
                       {"value", res.extracted.str()}});
    if (res.e_index)
        outputs.push_back({{"name", "distinguished_direction"},
                           {"value", std::to_string(res.e_index)}});
    if (res.quasi_homogeneous) {
        std::string w;
        for (std::size_t i = 0; i < res.weights.size(); ++i)
            w += (i ? ", " : "") + rational_str(res.weights[i]);
        outputs.push_back({{"name", "weights"}, {"value", w}});
    }
    for (const auto& [name, value] : res.invariants)
        outputs.push_back({{"name", name}, {"value", value.str()}});
    for (const auto& note : res.notes)
        outputs.push_back({{"name", "note"}, {"value", note}});
    return outputs;
}

void print_pipeline_human(const PipelineResult& res) {
    std::cout << "dimension:        " << res.dimension << "\n";
    std::cout << "basis:            ";
    for (std::size_t i = 0; i < res.basis_monomials.size(); ++i)
        std::cout << (i ? ", " : "") << res.basis_monomials[i];
    std::cout << "\n";
    std::cout << "socle degree:     " << res.socle_degree << "\n";
    std::cout << "embedding dim:    " << res.embedding_dim << "\n";
    std::cout << "filtration dims:  ";
    for (std::size_t i = 0; i < res.power_dims.size(); ++i)
        std::cout << (i ? ", " : "") << res.power_dims[i];
    std::cout << "\n";
    std::cout << "multiplication form: " << res.extracted.str() << "\n";
    if (res.e_index)
        std::cout << "distinguished direction: " << res.e_index << "\n";
    if (res.quasi_homogeneous) {
        std::cout << "weights:          ";
        for (std::size_t i = 0; i < res.weights.size(); ++i)
            std::cout << (i ? ", " : "") << rational_str(res.weights[i]);
        std::cout << "\n";
    }
    for (const auto& [name, value] : res.invariants)
        std::cout << name << " = " << value.str() << "\n";
    if (!res.genericity.empty()) {
        std::cout << "valid outside the vanishing of: ";
        for (std::size_t i = 0; i < res.genericity.size(); ++i)
            std::cout << (i ? ", " : "") << res.genericity[i].str();
        std::cout << "\n";
    }
    for (const auto& n : res.notes) std::cout << "note: " << n << "\n";
}

int run_moduli(GlobalOpts& g, const std::string& poly,
               const std::string& vars_csv, const std::string& params_csv) {
    std::vector<std::string> vars = split_names(vars_csv);
    if (vars.empty()) vars = {"x", "y", "z"};
    std::vector<std::string> params = split_names(params_csv);
    FPoly f = parse_poly(poly, vars, params);
    Recipe recipe; // structure only, no ratios
    recipe.name = "report";
    recipe.kind = PipelineKind::Standard;
    PipelineResult res = run_pipeline(f, recipe, g.catalog);
    if (g.json_out)
        emit(g, "moduli", {{"polynomial", poly}}, pipeline_outputs(res),
             genericity_json(res.genericity));
    else
        print_pipeline_human(res);
    return 0;
}

int run_absolute(GlobalOpts& g, const std::string& poly,
                 const std::string& vars_csv, const std::string& params_csv,
                 const std::string& recipe_name) {
    std::vector<std::string> vars = split_names(vars_csv);
    if (vars.empty()) vars = {"x", "y", "z"};
    std::vector<std::string> params = split_names(params_csv);
    FPoly f = parse_poly(poly, vars, params);
    Recipe recipe;
    if (recipe_name.rfind("custom:", 0) == 0) {
        std::ifstream in(recipe_name.substr(7));
        if (!in)
            throw InputError("cannot open recipe file: " +
                             recipe_name.substr(7));
        std::stringstream ss;
        ss << in.rdbuf();
        recipe = recipe_from_text(ss.str());
    } else {
        recipe = recipe_by_name(recipe_name);
    }
    PipelineResult res = run_pipeline(f, recipe, g.catalog);
    if (g.json_out) {
        emit(g, "absolute", {{"polynomial", poly}, {"recipe", recipe_name}},
             pipeline_outputs(res), genericity_json(res.genericity));
    } else {
        for (const auto& [name, value] : res.invariants)
            std::cout << value.str() << "\n";
        if (!res.genericity.empty()) {
            std::cout << "valid outside the vanishing of: ";
            for (std::size_t i = 0; i < res.genericity.size(); ++i)
                std::cout << (i ? ", " : "") << res.genericity[i].str();
            std::cout << "\n";
        }
    }
    return 0;
}

int run_verify_cmd(GlobalOpts& g, const std::string& only,
                   std::uint64_t seed) {
    auto results = run_verify(seed, only);
    bool all = true;
    json rows = json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        if (g.json_out) {
            rows.push_back({{"name", r.id},
                            {"title", r.title},
                            {"pass", r.pass},
                            {"detail", r.detail}});
        } else {
            std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id;
            for (std::size_t pad = r.id.size(); pad < 14; ++pad)
                std::cout << ' ';
            std::cout << r.title;
            if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
            std::cout << "\n";
        }
    }
    if (g.json_out) {
        json doc;
        doc["command"] = "verify";
        doc["inputs"] = {{"seed", seed}};
        doc["outputs"] = rows;
        doc["genericity"] = json::array();
        doc["status"] = all ? "ok" : "failed";
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << (all ? "all checks passed" : "SOME CHECKS FAILED")
                  << "\n";
    }
    return all ? 0 : 3;
}

int run_sextic_relation(GlobalOpts& g, const std::string& poly,
                        const std::string& vars_csv,
                        const std::string& params_csv) {
    std::vector<std::string> vars = split_names(vars_csv);
    if (vars.empty()) vars = {"x", "y"};
    std::vector<std::string> params = split_names(params_csv);
    HomogeneousForm p = HomogeneousForm::parse(poly, vars, params);
    auto data = sextic_relation_data(g.catalog, p);
    if (g.json_out) {
        json outputs = json::array();
        for (const auto& [name, value] : data)
            outputs.push_back({{"name", name}, {"value", value.str()}});
        emit(g, "sextic-relation", {{"polynomial", poly}}, outputs,
             json::array());
    } else {
        for (const auto& [name, value] : data)
            std::cout << name << " = " << value.str() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classical invariants of isolated hypersurface "
                 "singularities from their moduli algebras"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--catalog", g.catalog_file,
                   "replace the built-in invariant catalog");
    app.add_flag("--json", g.json_out, "emit a JSON report");

    std::string poly, vars_csv, params_csv, kind, recipe = "e6", only;
    std::uint64_t seed = 1;

    auto* cmd_j = app.add_subcommand("j", "j-invariant of a plane cubic or "
                                          "binary quartic");
    cmd_j->add_option("kind", kind, "cubic or quartic")->required();
    cmd_j->add_option("polynomial", poly)->required();
    cmd_j->add_option("--vars", vars_csv, "form variables (comma separated)");
    cmd_j->add_option("--params", params_csv, "parameters (comma separated)");

    auto* cmd_moduli =
        app.add_subcommand("moduli", "quotient algebra report for f");
    cmd_moduli->add_option("polynomial", poly)->required();
    cmd_moduli->add_option("--vars", vars_csv);
    cmd_moduli->add_option("--params", params_csv);

    auto* cmd_abs = app.add_subcommand(
        "absolute", "absolute invariants of the singularity f = 0");
    cmd_abs->add_option("polynomial", poly)->required();
    cmd_abs->add_option("--vars", vars_csv);
    cmd_abs->add_option("--params", params_csv);
    cmd_abs->add_option("--recipe", recipe,
                        "e6|e7|e8|sextic|two-param|custom:<file>");

    auto* cmd_verify =
        app.add_subcommand("verify", "run the full verification suite");
    cmd_verify->add_option("--only", only, "run a single check");
    cmd_verify->add_option("--seed", seed, "seed for randomized checks");

    auto* cmd_catalog =
        app.add_subcommand("catalog", "print the invariant catalog text");

    auto* cmd_rel = app.add_subcommand(
        "sextic-relation",
        "N^2 and the degree-30 monomials in J, K, L, M for a binary sextic");
    cmd_rel->add_option("polynomial", poly)->required();
    cmd_rel->add_option("--vars", vars_csv);
    cmd_rel->add_option("--params", params_csv);

    CLI11_PARSE(app, argc, argv);

    try {
        g.load_catalog();
        if (cmd_j->parsed()) return run_j(g, kind, poly, vars_csv, params_csv);
        if (cmd_moduli->parsed())
            return run_moduli(g, poly, vars_csv, params_csv);
        if (cmd_abs->parsed())
            return run_absolute(g, poly, vars_csv, params_csv, recipe);
        if (cmd_verify->parsed()) return run_verify_cmd(g, only, seed);
        if (cmd_catalog->parsed()) {
            std::cout << g.catalog.dump();
            return 0;
        }
        if (cmd_rel->parsed())
            return run_sextic_relation(g, poly, vars_csv, params_csv);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UndefinedError& e) {
        std::cerr << "undefined: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
