// heckeverify: batch verification of the edge-count formulas, the
// orbital/twisted-orbital integral identities, and the base change
// identity, against brute-force tree and lattice oracles. Exits
// nonzero when any certified comparison disagrees.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hecke/sweep.hpp"

using namespace hecke;
using nlohmann::json;

namespace {

struct OutputOptions {
    std::string format = "text";
    std::string out;
};

std::map<std::string, std::string> load_config(const std::string& explicit_path) {
    std::map<std::string, std::string> kv;
    std::string path = explicit_path;
    if (path.empty()) {
        const char* env = std::getenv("HECKEVERIFY_CONFIG");
        if (env) path = env;
    }
    if (path.empty()) return kv;
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("config", "cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

template <typename T>
std::vector<T> parse_list(const std::string& s) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if constexpr (std::is_same_v<T, Int>)
            out.push_back(Int(tok));
        else
            out.push_back(static_cast<T>(std::stoll(tok)));
    }
    return out;
}

Cocharacter parse_mu(const std::string& s) {
    auto parts = parse_list<long long>(s);
    if (parts.size() != 2) throw CLI::ValidationError("--mu", "expected i,j");
    return {parts[0], parts[1]};
}

void emit(const std::vector<ComparisonRow>& rows, const OutputOptions& opt, const std::string& command) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) throw CLI::ValidationError("--out", "cannot open " + opt.out);
        os = &file;
    }
    RowSummary s = summarize(rows);
    if (opt.format == "json") {
        json j;
        j["schema"] = "heckeverify/1";
        j["command"] = command;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"case", r.case_id},
                                 {"item", r.item},
                                 {"lhs", r.lhs},
                                 {"rhs", r.rhs},
                                 {"certified", r.certified},
                                 {"status", r.ok ? "OK" : "FAIL"}});
        j["summary"] = {{"total", s.total}, {"failed", s.failed}};
        j["ok"] = s.all_ok();
        (*os) << j.dump(2) << "\n";
    } else if (opt.format == "csv") {
        auto esc = [](std::string v) {
            for (auto& c : v)
                if (c == ',') c = ';';
            return v;
        };
        (*os) << "case,item,lhs,rhs,certified,status\n";
        for (const auto& r : rows)
            (*os) << esc(r.case_id) << "," << esc(r.item) << "," << esc(r.lhs) << "," << esc(r.rhs) << ","
                  << (r.certified ? "yes" : "no") << "," << (r.ok ? "OK" : "FAIL") << "\n";
    } else {
        size_t wc = 4, wi = 4;
        for (const auto& r : rows) {
            wc = std::max(wc, r.case_id.size());
            wi = std::max(wi, r.item.size());
        }
        for (const auto& r : rows) {
            (*os) << (r.ok ? "[ OK ] " : "[FAIL] ") << (r.certified ? "  " : "? ");
            (*os).width(static_cast<std::streamsize>(wc));
            (*os) << std::left << r.case_id << "  ";
            (*os).width(static_cast<std::streamsize>(wi));
            (*os) << std::left << r.item << "  " << r.lhs << "  vs  " << r.rhs << "\n";
        }
        (*os) << rows.size() << " comparisons, " << s.failed << " failures\n";
    }
}

// tally table for one fixed-set spec, uncertified shells reported unchecked
std::vector<ComparisonRow> tree_tally_rows(const FixedSetSpec& spec, const TruncTree& tree) {
    std::vector<ComparisonRow> rows;
    TallyResult res = tally(spec, tree);
    CaseParams p = tree_case_params(spec);
    for (const auto& [key, n] : res.counts) {
        auto [m, b] = key;
        WeylElt w{m, b, p.s};
        Int want = count_delta_sigma(w, p);
        rows.push_back({p.str(), w.str(), want.str() + " (formula)", n.str() + " (tree)", true, want == n});
    }
    if (res.uncertified_edges > 0)
        rows.push_back({p.str(), "beyond certified radius " + std::to_string(res.certified_max_r), "-",
                        res.uncertified_edges.str() + " edges (reported, unchecked)", false, true});
    return rows;
}

std::vector<ComparisonRow> lattice_oracle_rows(const OracleInstance& inst, int radius) {
    std::vector<ComparisonRow> rows;
    EmpiricalResult res = empirical_counts(inst.g, inst.twisted, *inst.sigma, radius);
    std::string label = inst.desc + " R=" + std::to_string(radius) + " | " + inst.params.str();
    if (!res.fixed_set_found) {
        rows.push_back({label, "fixed set", "located", "not found within radius", false, false});
        return rows;
    }
    rows.push_back({label, "fixed edges", std::to_string(res.fixed_edge_depths.size()) + " found",
                    "deepest endpoint at depth " + std::to_string(res.k_max), true, true});
    for (const auto& [w, n] : res.counts0) {
        if (res.certified(w)) {
            Int want = inst.twisted ? count_delta_sigma(w, inst.params) : count_gamma(w, inst.params);
            rows.push_back({label, w.str(), want.str() + " (formula)", n.str() + " (lattice)", true, want == n});
        } else {
            rows.push_back({label, w.str(), "-", n.str() + " (partial, reported)", false, true});
        }
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of Iwahori-level orbital integral identities for GL2"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key=value config file (or HECKEVERIFY_CONFIG)");

    OutputOptions out;
    std::map<std::string, std::string> cfg;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--format", out.format, "text, csv, or json")->check(CLI::IsMember({"text", "csv", "json"}));
        cmd->add_option("--out", out.out, "write the report to a file");
    };
    auto cfg_list = [&](const char* key, auto& target) {
        auto it = cfg.find(key);
        if (it != cfg.end()) target = parse_list<typename std::decay_t<decltype(target)>::value_type>(it->second);
    };
    auto cfg_scalar = [&](const char* key, auto& target) {
        auto it = cfg.find(key);
        if (it != cfg.end()) target = static_cast<std::decay_t<decltype(target)>>(std::stoll(it->second));
    };
    auto cfg_string = [&](const char* key, std::string& target) {
        auto it = cfg.find(key);
        if (it != cfg.end()) target = it->second;
    };

    // verify-counts
    auto* counts_cmd = app.add_subcommand("verify-counts", "edge-count formulas vs tree and lattice oracles");
    TreeGrid tree_grid;
    LatticeGrid lat_grid;
    lat_grid.ps = {3};
    lat_grid.as = {0, 1};
    lat_grid.max_radius = 4;
    bool skip_lattice = false, skip_tree = false, fault = false;
    std::vector<long long> cnt_q{2, 3};
    counts_cmd->add_option("--q", cnt_q, "residue cardinalities for the tree oracle")->delimiter(',');
    counts_cmd->add_option("--f", tree_grid.fs, "extension degrees")->delimiter(',');
    counts_cmd->add_option("--a", tree_grid.as, "discriminant exponents")->delimiter(',');
    counts_cmd->add_option("--radius", tree_grid.radius, "tree truncation radius");
    counts_cmd->add_option("--p", lat_grid.ps, "primes for the lattice oracle")->delimiter(',');
    counts_cmd->add_option("--precision", lat_grid.precision, "p-adic working precision");
    counts_cmd->add_option("--max-radius", lat_grid.max_radius, "lattice enumeration radius cap");
    counts_cmd->add_flag("--skip-lattice", skip_lattice, "tree oracle only");
    counts_cmd->add_flag("--skip-tree", skip_tree, "lattice oracle only");
    counts_cmd->add_flag("--inject-fault", fault)->group("");  // negative control
    add_output(counts_cmd);

    // verify-integrals / verify-fl
    auto* int_cmd = app.add_subcommand("verify-integrals", "summation vs closed forms of the integrals");
    auto* fl_cmd = app.add_subcommand("verify-fl", "twisted integrals vs base-changed orbital integrals");
    IntegralGrid int_grid, fl_grid;
    std::vector<long long> int_q, fl_q;
    std::vector<std::string> int_mu, fl_mu;
    int int_ram = -1, fl_ram = -1;
    for (auto [cmd, grid, qs, mus, ram] :
         {std::tuple{int_cmd, &int_grid, &int_q, &int_mu, &int_ram}, std::tuple{fl_cmd, &fl_grid, &fl_q, &fl_mu, &fl_ram}}) {
        cmd->add_option("--q", *qs, "residue cardinalities")->delimiter(',');
        cmd->add_option("--f", grid->fs, "extension degrees")->delimiter(',');
        cmd->add_option("--a", grid->as, "discriminant exponents")->delimiter(',');
        cmd->add_option("--max-len", grid->max_len, "largest cocharacter length");
        cmd->add_option("--size", grid->sizes, "determinant valuations")->delimiter(',');
        cmd->add_option("--mu", *mus, "explicit dominant cocharacters i,j (overrides --max-len/--size)");
        cmd->add_option("--ramified", *ram, "restrict to the ramified (1) or unramified (0) family")
            ->check(CLI::IsMember({0, 1}));
        cmd->add_option("--d-t", grid->d_T, "apartment-to-fixed-points distance (carried, not counted)");
        add_output(cmd);
    }
    fl_cmd->add_flag("--inject-fault", fault)->group("");

    // oracle-tree
    auto* otree_cmd = app.add_subcommand("oracle-tree", "tally one fixed-set geometry on the truncated tree");
    long long ot_q = 2;
    int ot_f = 1, ot_a = 0, ot_type = 0, ot_radius = 5;
    std::string ot_variant = "ball-vertex";
    otree_cmd->add_option("--q", ot_q, "residue cardinality");
    otree_cmd->add_option("--f", ot_f, "extension degree");
    otree_cmd->add_option("--a", ot_a, "fixed-set radius");
    otree_cmd->add_option("--center-type", ot_type, "type of the fixed vertex");
    otree_cmd->add_option("--radius", ot_radius, "truncation radius");
    otree_cmd->add_option("--variant", ot_variant, "flip, ball-edge, or ball-vertex")
        ->check(CLI::IsMember({"flip", "ball-edge", "ball-vertex"}));
    add_output(otree_cmd);

    // oracle-lattice
    auto* olat_cmd = app.add_subcommand("oracle-lattice", "brute-force census for one standard-form element");
    long long ol_p = 3;
    int ol_f = 1, ol_a = 0, ol_radius = 4, ol_prec = 40;
    bool ol_ram = false, ol_odd = false;
    int ol_eigen = 0;
    olat_cmd->add_option("--p", ol_p, "prime");
    olat_cmd->add_option("--f", ol_f, "extension degree (1 untwisted, 2 twisted)")->check(CLI::IsMember({1, 2}));
    olat_cmd->add_option("--a", ol_a, "discriminant exponent to realize");
    olat_cmd->add_option("--radius", ol_radius, "enumeration radius");
    olat_cmd->add_option("--precision", ol_prec, "p-adic working precision");
    olat_cmd->add_flag("--ramified", ol_ram, "ramified splitting field");
    olat_cmd->add_flag("--odd", ol_odd, "odd determinant valuation");
    olat_cmd->add_option("--eigen-diff", ol_eigen, "eigenvalue valuation difference mod 4 (split case)")
        ->check(CLI::IsMember({0, 2}));
    add_output(olat_cmd);

    // show-admissible / show-bernstein
    auto* adm_cmd = app.add_subcommand("show-admissible", "list the admissible set of a dominant cocharacter");
    auto* bern_cmd = app.add_subcommand("show-bernstein", "coefficients of the Bernstein basis element");
    std::string mu_str = "1,0";
    long long bq = 0;
    int bf = 1;
    for (auto* cmd : {adm_cmd, bern_cmd}) {
        cmd->add_option("--mu", mu_str, "cocharacter i,j")->required();
        add_output(cmd);
    }
    bern_cmd->add_option("--q", bq, "evaluate numerically at this residue cardinality");
    bern_cmd->add_option("--f", bf, "coefficients over the degree-f extension");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg = load_config(config_path);
        cfg_string("format", out.format);
        cfg_string("out", out.out);

        std::vector<ComparisonRow> rows;
        std::string command;

        if (counts_cmd->parsed()) {
            command = "verify-counts";
            if (counts_cmd->count("--q") == 0) cfg_list("q", cnt_q);
            if (counts_cmd->count("--f") == 0) cfg_list("f", tree_grid.fs);
            if (counts_cmd->count("--a") == 0) cfg_list("a", tree_grid.as);
            if (counts_cmd->count("--radius") == 0) cfg_scalar("radius", tree_grid.radius);
            if (counts_cmd->count("--p") == 0) cfg_list("p", lat_grid.ps);
            if (counts_cmd->count("--precision") == 0) cfg_scalar("precision", lat_grid.precision);
            tree_grid.qs.clear();
            for (long long q : cnt_q) tree_grid.qs.push_back(Int(q));
            lat_grid.fs = tree_grid.fs;
            if (!skip_tree) rows = run_verify_counts_tree(tree_grid);
            if (!skip_lattice) {
                auto lat = run_verify_counts_lattice(lat_grid);
                rows.insert(rows.end(), lat.begin(), lat.end());
            }
            if (fault) inject_fault(rows);
        } else if (int_cmd->parsed()) {
            command = "verify-integrals";
            if (int_cmd->count("--q") == 0) cfg_list("q", int_q);
            if (!int_q.empty()) {
                int_grid.qs.clear();
                for (long long q : int_q) int_grid.qs.push_back(Int(q));
            }
            for (const std::string& m : int_mu) int_grid.mus.push_back(parse_mu(m));
            if (int_ram >= 0) int_grid.ramified_filter = (int_ram == 1);
            rows = run_verify_integrals(int_grid);
        } else if (fl_cmd->parsed()) {
            command = "verify-fl";
            if (fl_cmd->count("--q") == 0) cfg_list("q", fl_q);
            if (!fl_q.empty()) {
                fl_grid.qs.clear();
                for (long long q : fl_q) fl_grid.qs.push_back(Int(q));
            }
            for (const std::string& m : fl_mu) fl_grid.mus.push_back(parse_mu(m));
            if (fl_ram >= 0) fl_grid.ramified_filter = (fl_ram == 1);
            rows = run_verify_fl(fl_grid);
            if (fault) inject_fault(rows);
        } else if (otree_cmd->parsed()) {
            command = "oracle-tree";
            FixedSetSpec spec;
            spec.q = Int(ot_q);
            spec.f = ot_f;
            spec.a = ot_a;
            spec.center_type = ot_type;
            spec.variant = ot_variant == "flip"        ? FixedSetSpec::Variant::FlipEdge
                           : ot_variant == "ball-edge" ? FixedSetSpec::Variant::BallAroundEdge
                                                       : FixedSetSpec::Variant::BallAroundVertex;
            rows = tree_tally_rows(spec, TruncTree{Int(ot_q), ot_f, ot_radius});
        } else if (olat_cmd->parsed()) {
            command = "oracle-lattice";
            OracleInstance inst;
            if (ol_f == 1) {
                inst = make_gamma_instance(ol_p, ol_ram, ol_odd, ol_a, ol_prec);
            } else {
                DeltaBranch br = ol_ram ? (ol_odd ? DeltaBranch::RamOdd : DeltaBranch::RamEven)
                                 : ol_odd ? DeltaBranch::SplitOdd
                                 : ol_eigen == 0 ? DeltaBranch::SplitEvenDiff0
                                                 : DeltaBranch::SplitEvenDiff2;
                inst = make_delta_instance(ol_p, br, ol_a, ol_prec);
            }
            rows = lattice_oracle_rows(inst, ol_radius);
        } else if (adm_cmd->parsed()) {
            command = "show-admissible";
            Cocharacter mu = parse_mu(mu_str);
            for (const WeylElt& w : admissible_set(mu))
                rows.push_back({"mu=" + mu.str(), w.str(), "length " + std::to_string(length(w)),
                                "size " + std::to_string(size(w)), true, true});
        } else if (bern_cmd->parsed()) {
            command = "show-bernstein";
            Cocharacter mu = parse_mu(mu_str);
            for (const WeylElt& w : admissible_set(mu)) {
                Scalar c = bernstein_coeff_ext(mu, w, bf);
                std::string value = c.str();
                if (bq >= 2) value += " = " + c.eval(Int(bq)).str();
                rows.push_back({"mu=" + mu.str() + " f=" + std::to_string(bf), w.str(), "coefficient", value, true,
                                true});
            }
        }

        emit(rows, out, command);
        return summarize(rows).all_ok() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
