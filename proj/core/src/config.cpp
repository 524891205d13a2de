#include "collapse/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <set>
#include <sstream>

#include "collapse/error.hpp"

namespace collapse {

namespace {

namespace pt = boost::property_tree;

std::vector<double> parse_list(const std::string& s, const std::string& key) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item.substr(b), &used));
        } catch (const std::exception&) {
            throw InputError("config: bad number '" + item + "' in " + key);
        }
    }
    return out;
}

template <class T>
void get(const pt::ptree& tree, const std::string& key, T& value) {
    auto node = tree.get_child_optional(pt::ptree::path_type(key, '.'));
    if (!node) return;
    try {
        value = node->get_value<T>();
    } catch (const pt::ptree_bad_data&) {
        throw InputError("config: bad value for " + key + ": '" + node->data() + "'");
    }
}

bool parse_bool(const std::string& s) {
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw InputError("config: bad boolean '" + s + "'");
}

const std::set<std::string> kKnown = {
    "profile.base",   "profile.fiber",   "profile.area",      "profile.a",          "profile.b",
    "profile.phase",  "profile.table",   "fluid.gamma",       "fluid.a",            "fluid.mu",
    "fluid.eta",      "fluid.rho_floor", "solver.nx",         "solver.ns",          "solver.cfl",
    "solver.kappa4",  "solver.limit_factor", "solver.epsilon", "initial.rho0",      "initial.rho_amp",
    "initial.u_a",    "initial.u_b",     "initial.delta0",    "study.mode",         "study.epsilons",
    "study.t_end",    "study.sample_dt", "study.kappa",       "study.workers",      "study.korn",
    "study.korn_iter", "study.output"};

void check_keys(const pt::ptree& tree) {
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw InputError("config: key '" + section + "' outside a section");
        for (const auto& [key, val] : body) {
            (void)val;
            const std::string full = section + "." + key;
            if (!kKnown.count(full)) throw InputError("config: unknown key " + full);
        }
    }
}

}  // namespace

StudyConfig parse_config(std::istream& is) {
    pt::ptree tree;
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    check_keys(tree);

    StudyConfig cfg;
    if (auto v = tree.get_optional<std::string>("profile.base")) cfg.profile.base = parse_base_kind(*v);
    if (auto v = tree.get_optional<std::string>("profile.fiber")) cfg.profile.fiber = parse_fiber_kind(*v);
    if (auto v = tree.get_optional<std::string>("profile.area")) cfg.profile.shape = parse_shape_kind(*v);
    get(tree, "profile.a", cfg.profile.a);
    get(tree, "profile.b", cfg.profile.b);
    get(tree, "profile.phase", cfg.profile.phase);
    if (auto v = tree.get_optional<std::string>("profile.table")) cfg.profile.table = parse_list(*v, "profile.table");

    get(tree, "fluid.gamma", cfg.law.gamma);
    get(tree, "fluid.a", cfg.law.a);
    get(tree, "fluid.mu", cfg.mu);
    get(tree, "fluid.eta", cfg.eta);
    get(tree, "fluid.rho_floor", cfg.rho_floor);

    get(tree, "solver.nx", cfg.nx);
    get(tree, "solver.ns", cfg.ns);
    get(tree, "solver.cfl", cfg.cfl);
    get(tree, "solver.kappa4", cfg.kappa4);
    get(tree, "solver.limit_factor", cfg.limit_factor);

    get(tree, "initial.rho0", cfg.initial.rho0);
    get(tree, "initial.rho_amp", cfg.initial.rho_amp);
    get(tree, "initial.u_a", cfg.initial.u_a);
    get(tree, "initial.u_b", cfg.initial.u_b);
    get(tree, "initial.delta0", cfg.initial.delta0);

    if (auto v = tree.get_optional<std::string>("study.mode")) cfg.mode = parse_study_mode(*v);
    if (auto v = tree.get_optional<std::string>("study.epsilons")) cfg.epsilons = parse_list(*v, "study.epsilons");
    get(tree, "study.t_end", cfg.t_end);
    get(tree, "study.sample_dt", cfg.sample_dt);
    get(tree, "study.kappa", cfg.kappa);
    get(tree, "study.workers", cfg.workers);
    if (auto v = tree.get_optional<std::string>("study.korn")) cfg.korn = parse_bool(*v);
    get(tree, "study.korn_iter", cfg.korn_iter);
    get(tree, "study.output", cfg.output);

    cfg.validate();
    return cfg;
}

StudyConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open " + path);
    return parse_config(in);
}

double config_epsilon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open " + path);
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    const double eps = tree.get<double>("solver.epsilon", 0.1);
    require(eps > 0.0, "config: solver.epsilon must be positive");
    return eps;
}

}  // namespace collapse
