// Command-line front end: generators, structural analysis, coefficient
// matrix dumps, rank search, power-sum decompositions and the claim
// verification harness.
//
// Exit codes: 0 success (and every asserted claim holds), 1 a claim check
// failed (the report is still written), 2 usage or input error, 3 resource
// budget exceeded.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "maxrank/circuit.hpp"
#include "maxrank/circuit_analysis.hpp"
#include "maxrank/circuit_json.hpp"
#include "maxrank/coeff_matrix.hpp"
#include "maxrank/errors.hpp"
#include "maxrank/generators.hpp"
#include "maxrank/partition.hpp"
#include "maxrank/poly_text.hpp"
#include "maxrank/report.hpp"
#include "maxrank/transforms.hpp"
#include "maxrank/verify.hpp"

using nlohmann::ordered_json;
using namespace maxrank;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (content.empty() || content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << content;
    if (content.empty() || content.back() != '\n') out << '\n';
}

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{';
    }
    return false;
}

// Options shared by most subcommands. Values are only meaningful for flags
// the subcommand actually registers.
struct CommonOpts {
    std::uint32_t field = 2;
    bool field_given = false;
    std::uint64_t seed = kDefaultCheckSeed;
    std::uint64_t trials = 0;
    std::uint64_t budget = kDefaultTermBudget;
    std::size_t rank_limit = kDefaultRankLimit;
    unsigned jobs = 1;
    std::string out;
    std::string format = "json";
};

void add_field(CLI::App* cmd, CommonOpts& o, std::uint32_t def) {
    o.field = def;
    cmd->add_option("--field", o.field, "Prime field modulus")
        ->default_val(std::to_string(def))
        ->each([&o](const std::string&) { o.field_given = true; });
}

void add_budgets(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--budget", o.budget,
                    "Expansion term budget / exhaustive assignment budget")
        ->default_val(std::to_string(kDefaultTermBudget));
    cmd->add_option("--rank-limit", o.rank_limit, "Matrix dimension limit")
        ->default_val(std::to_string(kDefaultRankLimit));
}

void add_output(CLI::App* cmd, CommonOpts& o, bool with_format) {
    cmd->add_option("--out", o.out, "Output path (default: stdout)");
    if (with_format)
        cmd->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->default_val("json");
}

CheckConfig to_check_config(const CommonOpts& o) {
    CheckConfig c;
    c.field = Field(o.field);
    c.seed = o.seed;
    c.trials = o.trials;
    c.budget = o.budget;
    c.rank_limit = o.rank_limit;
    c.jobs = o.jobs;
    return c;
}

// ---- polynomial input ----------------------------------------------------

struct PolyInput {
    Field field{2};
    UniversePtr universe;
    Polynomial poly{Field(2), VarUniverse::of({})};
    std::optional<Partition> partition;
};

PolyInput load_poly_input(const std::string& path, const CommonOpts& o,
                          const std::string& partition_path) {
    const std::string text = read_file(path);
    PolyInput in;
    if (looks_like_json(text)) {
        ordered_json j = ordered_json::parse(text, nullptr, true, true);
        const std::string kind = j.value("kind", "");
        if (kind == "polynomial") {
            if (!j.contains("field"))
                throw InputError("polynomial file '" + path + "' lacks \"field\"");
            in.field = Field(j.at("field").get<std::uint32_t>());
            if (o.field_given && o.field != in.field.modulus())
                throw FieldMismatchError(
                    "--field " + std::to_string(o.field) + " conflicts with " +
                    path + " (field " + std::to_string(in.field.modulus()) + ")");
            const std::string poly_text = j.at("poly").get<std::string>();
            if (j.contains("vars")) {
                in.universe =
                    VarUniverse::of(j.at("vars").get<std::vector<std::string>>());
                in.poly = parse_polynomial(poly_text, in.field, in.universe);
            } else {
                in.poly = parse_polynomial(poly_text, in.field);
                in.universe = in.poly.universe();
            }
            if (j.contains("partition"))
                in.partition =
                    Partition::from_json(j.at("partition").dump(), in.universe);
        } else if (kind == "formula" || kind == "sps" || kind == "abp") {
            Circuit c = circuit_from_json(
                text, o.field_given ? std::optional<Field>(Field(o.field))
                                    : std::nullopt);
            in.field = circuit_field(c);
            in.universe = circuit_universe(c);
            in.poly = circuit_expand(c, o.budget);
        } else {
            throw InputError("unrecognized \"kind\" in '" + path + "'");
        }
    } else {
        in.field = Field(o.field);
        in.poly = parse_polynomial(text, in.field);
        in.universe = in.poly.universe();
    }
    if (!partition_path.empty())
        in.partition = Partition::from_json(read_file(partition_path), in.universe);
    return in;
}

PolyCoeffMatrix build_matrix(const PolyInput& in) {
    if (in.partition) return PolyCoeffMatrix::build(in.poly, *in.partition);
    return PolyCoeffMatrix::build(in.poly, YzSplit::by_prefix(in.universe));
}

// ---- JSON helpers ----------------------------------------------------------

ordered_json form_to_json(const AffineForm& a, const VarUniverse& u) {
    ordered_json j;
    j["c"] = a.constant;
    ordered_json lin = ordered_json::object();
    for (const auto& [v, c] : a.linear) lin[u.name(v)] = c;
    j["lin"] = lin;
    return j;
}

std::string poly_wrapper_json(const Polynomial& f, const Partition& pi,
                              ordered_json meta) {
    ordered_json j;
    j["kind"] = "polynomial";
    j["format_version"] = 1;
    j["field"] = f.field().modulus();
    j["vars"] = f.universe()->names();
    j["poly"] = to_text(f);
    j["partition"] = ordered_json::parse(pi.to_json());
    j["meta"] = std::move(meta);
    return j.dump(2);
}

// Circuit JSON with replay metadata appended; readers ignore unknown keys.
std::string circuit_json_with_meta(const std::string& circuit_json,
                                   ordered_json meta) {
    ordered_json j = ordered_json::parse(circuit_json);
    j["meta"] = std::move(meta);
    return j.dump(2);
}

const char* formula_kind_name(Formula::Kind k) {
    switch (k) {
    case Formula::Kind::Var: return "var";
    case Formula::Kind::Const: return "const";
    case Formula::Kind::UPoly: return "upoly";
    case Formula::Kind::Plus: return "plus";
    case Formula::Kind::Times: return "times";
    }
    return "?";
}

const char* product_kind_name(ProductGateKind k) {
    switch (k) {
    case ProductGateKind::Disjoint: return "disjoint";
    case ProductGateKind::Sparse: return "sparse";
    case ProductGateKind::Neither: return "neither";
    }
    return "?";
}

// ---- subcommand bodies -----------------------------------------------------

int run_analyze(const std::string& in_path, const std::string& partition_path,
                std::uint32_t k, std::uint32_t s, const CommonOpts& o) {
    const std::string text = read_file(in_path);
    Circuit c = circuit_from_json(
        text, o.field_given ? std::optional<Field>(Field(o.field)) : std::nullopt);
    ordered_json j;
    j["kind"] = circuit_kind(c);
    j["field"] = circuit_field(c).modulus();

    if (const Formula* f = std::get_if<Formula>(&c)) {
        YzSplit split = partition_path.empty()
                            ? YzSplit::by_prefix(f->universe())
                            : YzSplit(f->universe(),
                                      Partition::from_json(read_file(partition_path),
                                                           f->universe())
                                          .sides());
        std::vector<NodeProfile> profiles = node_profiles(*f, split);
        WeakNodeReport weak = k_weak_nodes(*f, split, k);
        std::vector<ProductGateInfo> gates = classify_product_gates(*f, s, o.budget);
        ProductSparseCheck psc = is_product_sparse(*f, s, o.budget);

        j["k"] = k;
        j["s"] = s;
        j["root"] = f->root();
        j["product_sparse"] = {
            {"ok", psc.ok}, {"depth", psc.depth}, {"offenders", psc.offenders}};
        std::map<std::uint32_t, const ProductGateInfo*> by_id;
        for (const ProductGateInfo& g : gates) by_id[g.id] = &g;
        ordered_json nodes = ordered_json::array();
        ordered_json weak_ids = ordered_json::array();
        for (std::uint32_t id = 0; id < f->size(); ++id) {
            const NodeProfile& p = profiles[id];
            ordered_json n;
            n["id"] = id;
            n["kind"] = formula_kind_name(f->node(id).kind);
            n["y_vars"] = p.y_vars.size();
            n["z_vars"] = p.z_vars.size();
            n["a2"] = p.a2;
            n["b2"] = p.b2;
            n["ps_depth"] = p.ps_depth;
            n["weak"] = static_cast<bool>(weak.weak[id]);
            if (auto it = by_id.find(id); it != by_id.end())
                n["product_kind"] = product_kind_name(it->second->kind);
            nodes.push_back(std::move(n));
            if (weak.weak[id]) weak_ids.push_back(id);
        }
        j["nodes"] = std::move(nodes);
        j["weak_nodes"] = std::move(weak_ids);
    } else if (const SigmaPiSigma* sps = std::get_if<SigmaPiSigma>(&c)) {
        SpsProperties props = sps_properties(*sps);
        j["top_fanin"] = props.top_fanin;
        j["max_gate_fanin"] = props.max_gate_fanin;
        j["homogeneous"] = props.homogeneous;
        j["product_dimension"] = props.product_dimension;
        j["total_dimension"] = props.total_dimension;
    } else if (const Abp* abp = std::get_if<Abp>(&c)) {
        AbpPartitionCheck chk = abp_partition_check(*abp);
        j["depth"] = abp->depth();
        j["node_count"] = abp->node_count();
        j["homogeneous"] = abp->homogeneous();
        j["partitioned"] = chk.partitioned;
        if (chk.partitioned) {
            j["level"] = chk.level;
            j["level_width"] = chk.level_width;
            j["bound_exponent2"] = chk.bound_exponent2;
            j["rank_bound"] = pow2_bound_text(chk.level_width, chk.bound_exponent2);
            j["node_case"] = chk.node_case;
        }
        j["failures"] = chk.failures;
    }
    write_output(o.out, j.dump(2));
    return 0;
}

int run_matrix(const std::string& in_path, const std::string& partition_path,
               const CommonOpts& o) {
    PolyInput in = load_poly_input(in_path, o, partition_path);
    PolyCoeffMatrix m = build_matrix(in);
    if (o.format == "csv") {
        write_output(o.out, to_csv(m));
        return 0;
    }
    const VarUniverse& u = *m.split().universe();
    ordered_json j;
    j["field"] = m.field().modulus();
    j["rows"] = m.row_masks().size();
    j["cols"] = m.col_masks().size();
    ordered_json entries = ordered_json::array();
    for (const auto& [key, e] : m.entries()) {
        ordered_json cell;
        cell["y"] = to_text(m.support_monomial(Side::Y, key.first), u);
        cell["z"] = to_text(m.support_monomial(Side::Z, key.second), u);
        cell["entry"] = to_text(e);
        entries.push_back(std::move(cell));
    }
    j["entries"] = std::move(entries);
    write_output(o.out, j.dump(2));
    return 0;
}

int run_maxrank(const std::string& in_path, const std::string& partition_path,
                const std::string& mode, const CommonOpts& o) {
    PolyInput in = load_poly_input(in_path, o, partition_path);
    PolyCoeffMatrix m = build_matrix(in);
    MaxrankOptions opts;
    opts.mode = mode == "sampled" ? MaxrankMode::Sampled : MaxrankMode::Exhaustive;
    opts.seed = o.seed;
    opts.trials = o.trials ? o.trials : 1000;
    opts.budget = o.budget;
    opts.rank_limit = o.rank_limit;
    opts.jobs = o.jobs;
    MaxrankResult res = maxrank::maxrank(m, opts);

    if (o.format == "csv") {
        std::string csv = "value,exact,rows,cols,substitutions_tried,mode,seed\n";
        csv += std::to_string(res.value) + "," + (res.exact ? "true" : "false") +
               "," + std::to_string(res.matrix_rows) + "," +
               std::to_string(res.matrix_cols) + "," +
               std::to_string(res.substitutions_tried) + "," + mode + "," +
               std::to_string(o.seed);
        write_output(o.out, csv);
        return 0;
    }
    const VarUniverse& u = *m.split().universe();
    ordered_json j;
    j["value"] = res.value;
    j["exact"] = res.exact;
    ordered_json witness = ordered_json::object();
    for (const auto& [v, val] : res.witness) witness[u.name(v)] = val;
    j["witness"] = std::move(witness);
    j["substitutions_tried"] = res.substitutions_tried;
    j["rows"] = res.matrix_rows;
    j["cols"] = res.matrix_cols;
    j["field"] = m.field().modulus();
    j["mode"] = mode;
    j["seed"] = o.seed;
    write_output(o.out, j.dump(2));
    return 0;
}

int run_decompose(const std::string& in_path, std::size_t gate_index,
                  const std::string& method, std::uint32_t degree,
                  const CommonOpts& o) {
    const std::string text = read_file(in_path);
    // decompose defaults to GF(101): large enough to keep d! invertible for
    // every realistic gate degree when the file itself does not pin a field.
    Circuit c = circuit_from_json(
        text, o.field_given ? std::optional<Field>(Field(o.field))
                            : std::optional<Field>(Field(101)));
    const SigmaPiSigma* sps = std::get_if<SigmaPiSigma>(&c);
    if (!sps) throw InputError("decompose expects an \"sps\" circuit file");
    if (gate_index >= sps->gates.size())
        throw InputError("gate index " + std::to_string(gate_index) +
                         " out of range; circuit has " +
                         std::to_string(sps->gates.size()) + " gates");
    const std::vector<AffineForm>& gate = sps->gates[gate_index];

    PowerSumForm ps(sps->field, sps->universe);
    if (method == "fischer") {
        ps = fischer_decompose(gate, sps->field, sps->universe, o.budget);
    } else {
        const std::uint32_t d =
            degree ? degree : static_cast<std::uint32_t>(gate.size());
        ps = sum_of_powers_rewrite(gate, d, sps->field, sps->universe, o.budget);
    }

    const VarUniverse& u = *sps->universe;
    ordered_json j;
    j["method"] = method;
    j["field"] = sps->field.modulus();
    j["gate"] = gate_index;
    j["exponent"] = ps.exponent;
    j["count"] = ps.terms.size();
    ordered_json terms = ordered_json::array();
    for (const PowerTerm& t : ps.terms) {
        ordered_json term;
        term["coeff"] = t.coeff;
        term["form"] = form_to_json(t.form, u);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    j["verified"] = true; // both transforms self-check before returning
    write_output(o.out, j.dump(2));
    return 0;
}

int emit_reports(const std::vector<VerdictReport>& reports, const CommonOpts& o,
                 std::uint64_t elapsed_ms) {
    std::string artifact = o.format == "csv"
                               ? reports_to_csv(reports)
                               : reports_to_json(reports, true, elapsed_ms);
    write_output(o.out, artifact);
    std::size_t failed = 0;
    for (const VerdictReport& r : reports)
        if (!r.holds) ++failed;
    std::fprintf(stderr, "%zu claims checked, %zu failed\n", reports.size(),
                 failed);
    return failed == 0 ? 0 : 1;
}

int run_verify(const std::string& claim, std::size_t n, std::size_t d,
               const CommonOpts& o) {
    const CheckConfig config = to_check_config(o);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<VerdictReport> reports;
    if (claim == "imm-rank" && n && d) {
        reports = check_imm_rank_case(n, d, config);
    } else if (claim == "imm-grid" && n && d) {
        reports = check_imm_grid_case(n, d, config);
    } else if (claim == "q-rank" && n) {
        reports = check_q_rank_case(n, config);
    } else {
        reports = run_checks(claim, config);
    }
    const std::uint64_t elapsed = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count());
    return emit_reports(reports, o, elapsed);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coefficient-matrix rank toolkit for polynomials over GF(p)"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- gen ----
    CLI::App* gen = app.add_subcommand("gen", "Generate polynomials and circuits");
    gen->require_subcommand(1);

    {
        static CommonOpts o;
        static std::size_t n = 2, d = 2;
        CLI::App* cmd = gen->add_subcommand(
            "imm", "Iterated matrix product entry (1,1), with its layer partition");
        cmd->add_option("--n", n, "Matrix dimension")->required();
        cmd->add_option("--d", d, "Number of factors")->required();
        add_field(cmd, o, 2);
        add_budgets(cmd, o);
        add_output(cmd, o, false);
        cmd->callback([&]() {
            Polynomial f = gen_imm(n, d, Field(o.field), o.budget);
            ordered_json meta = {{"generator", "imm"}, {"n", n}, {"d", d}};
            write_output(o.out, poly_wrapper_json(f, Partition::imm(n, d), meta));
        });
    }
    {
        static CommonOpts o;
        static std::size_t n = 8;
        CLI::App* cmd = gen->add_subcommand(
            "q", "Subset-pairing polynomial with the half/half partition");
        cmd->add_option("--n", n, "Variable count, divisible by 4")->required();
        add_field(cmd, o, 2);
        add_output(cmd, o, false);
        cmd->callback([&]() {
            Polynomial f = gen_q(n, Field(o.field));
            ordered_json meta = {{"generator", "q"}, {"n", n}};
            write_output(o.out, poly_wrapper_json(f, q_partition(n), meta));
        });
    }
    {
        static CommonOpts o;
        static SpsGenParams p;
        static bool homogeneous = false;
        CLI::App* cmd =
            gen->add_subcommand("random-sps", "Random depth-three circuit");
        cmd->add_option("--gates", p.top_fanin, "Top fan-in")->default_val("2");
        cmd->add_option("--fanin", p.gate_fanin, "Forms per product gate")
            ->default_val("2");
        cmd->add_option("--y", p.y_count, "Y variables")->default_val("2");
        cmd->add_option("--z", p.z_count, "Z variables")->default_val("2");
        cmd->add_flag("--homogeneous", homogeneous, "Homogeneous linear forms");
        cmd->add_option("--gate-cap", p.gate_dimension_cap,
                        "Per-gate span dimension cap (0 = off)");
        cmd->add_option("--pool", p.shared_pool,
                        "Shared form pool size bounding total dimension (0 = off)");
        add_field(cmd, o, 2);
        cmd->add_option("--seed", o.seed, "Generator seed")
            ->default_val(std::to_string(kDefaultCheckSeed));
        add_output(cmd, o, false);
        cmd->callback([&]() {
            p.homogeneous = homogeneous;
            SigmaPiSigma c = gen_random_sps(p, Field(o.field), o.seed);
            ordered_json meta = {{"generator", "random-sps"},
                                 {"gates", p.top_fanin},
                                 {"fanin", p.gate_fanin},
                                 {"y", p.y_count},
                                 {"z", p.z_count},
                                 {"homogeneous", p.homogeneous},
                                 {"gate_cap", p.gate_dimension_cap},
                                 {"pool", p.shared_pool},
                                 {"seed", o.seed}};
            write_output(o.out, circuit_json_with_meta(circuit_to_json(c), meta));
        });
    }
    {
        static CommonOpts o;
        static ProductSparseGenParams p;
        CLI::App* cmd = gen->add_subcommand(
            "random-psf", "Random product-sparse formula");
        cmd->add_option("--s", p.s, "Sparseness parameter")->default_val("1");
        cmd->add_option("--depth", p.depth, "Non-disjoint products per path")
            ->default_val("1");
        cmd->add_option("--max-leaves", p.max_leaves, "Leaf budget")
            ->default_val("12");
        cmd->add_option("--y", p.y_count, "Y variables")->default_val("3");
        cmd->add_option("--z", p.z_count, "Z variables")->default_val("3");
        add_field(cmd, o, 2);
        cmd->add_option("--seed", o.seed, "Generator seed")
            ->default_val(std::to_string(kDefaultCheckSeed));
        add_output(cmd, o, false);
        cmd->callback([&]() {
            Formula f = gen_random_product_sparse(p, Field(o.field), o.seed);
            ordered_json meta = {{"generator", "random-psf"},
                                 {"s", p.s},
                                 {"depth", p.depth},
                                 {"max_leaves", p.max_leaves},
                                 {"y", p.y_count},
                                 {"z", p.z_count},
                                 {"seed", o.seed}};
            write_output(o.out, circuit_json_with_meta(circuit_to_json(f), meta));
        });
    }
    {
        static CommonOpts o;
        static AbpGenParams p;
        CLI::App* cmd = gen->add_subcommand(
            "ordered-abp", "Random ordered branching program over x1..x2n");
        cmd->add_option("--n", p.n, "Half the variable count")->default_val("3");
        cmd->add_option("--depth", p.depth, "Levels minus one, at most 2n")
            ->default_val("4");
        cmd->add_option("--width", p.max_width, "Interior level width")
            ->default_val("3");
        add_field(cmd, o, 2);
        cmd->add_option("--seed", o.seed, "Generator seed")
            ->default_val(std::to_string(kDefaultCheckSeed));
        add_output(cmd, o, false);
        cmd->callback([&]() {
            Abp a = gen_ordered_abp(p, Field(o.field), o.seed);
            ordered_json meta = {{"generator", "ordered-abp"},
                                 {"n", p.n},
                                 {"depth", p.depth},
                                 {"width", p.max_width},
                                 {"seed", o.seed}};
            write_output(o.out, circuit_json_with_meta(circuit_to_json(a), meta));
        });
    }

    // ---- analyze ----
    {
        static CommonOpts o;
        static std::string in_path, partition_path;
        static std::uint32_t k = 1, s = 1;
        CLI::App* cmd = app.add_subcommand(
            "analyze", "Structural report for a circuit file");
        cmd->add_option("--in", in_path, "Circuit JSON file")->required();
        cmd->add_option("--partition", partition_path,
                        "Partition JSON overriding the name-prefix split");
        cmd->add_option("--k", k, "Imbalance parameter")->default_val("1");
        cmd->add_option("--s", s, "Sparseness parameter")->default_val("1");
        add_field(cmd, o, 2);
        add_budgets(cmd, o);
        add_output(cmd, o, false);
        cmd->callback(
            [&]() { exit_code = run_analyze(in_path, partition_path, k, s, o); });
    }

    // ---- matrix ----
    {
        static CommonOpts o;
        static std::string in_path, partition_path;
        CLI::App* cmd = app.add_subcommand(
            "matrix", "Coefficient matrix of a polynomial under a partition");
        cmd->add_option("--in", in_path, "Polynomial file (JSON wrapper or text)")
            ->required();
        cmd->add_option("--partition", partition_path, "Partition JSON file");
        add_field(cmd, o, 2);
        add_budgets(cmd, o);
        add_output(cmd, o, true);
        o.format = "csv";
        cmd->get_option("--format")->default_val("csv");
        cmd->callback([&]() { exit_code = run_matrix(in_path, partition_path, o); });
    }

    // ---- maxrank ----
    {
        static CommonOpts o;
        static std::string in_path, partition_path, mode = "exhaustive";
        CLI::App* cmd = app.add_subcommand(
            "maxrank", "Maximum coefficient-matrix rank over entry substitutions");
        cmd->add_option("--in", in_path,
                        "Polynomial or circuit file (JSON or polynomial text)")
            ->required();
        cmd->add_option("--partition", partition_path, "Partition JSON file");
        cmd->add_option("--mode", mode, "Search mode")
            ->check(CLI::IsMember({"exhaustive", "sampled"}))
            ->default_val("exhaustive");
        cmd->add_option("--trials", o.trials, "Sampled-mode trial count");
        cmd->add_option("--seed", o.seed, "Sampled-mode seed")
            ->default_val(std::to_string(kDefaultCheckSeed));
        cmd->add_option("--jobs", o.jobs, "Worker threads")->default_val("1");
        add_field(cmd, o, 2);
        add_budgets(cmd, o);
        add_output(cmd, o, true);
        cmd->callback(
            [&]() { exit_code = run_maxrank(in_path, partition_path, mode, o); });
    }

    // ---- decompose ----
    {
        static CommonOpts o;
        static std::string in_path, method = "fischer";
        static std::size_t gate_index = 0;
        static std::uint32_t degree = 0;
        CLI::App* cmd = app.add_subcommand(
            "decompose", "Power-sum decomposition of a product gate");
        cmd->add_option("--in", in_path, "Depth-three circuit JSON file")
            ->required();
        cmd->add_option("--gate", gate_index, "Gate index")->default_val("0");
        cmd->add_option("--method", method,
                        "fischer: full product; slice: one degree slice")
            ->check(CLI::IsMember({"fischer", "slice"}))
            ->default_val("fischer");
        cmd->add_option("--degree", degree,
                        "Slice degree (slice method; default: gate fan-in)");
        add_field(cmd, o, 101);
        o.field_given = false; // GF(101) is a fallback, not an override
        add_budgets(cmd, o);
        add_output(cmd, o, false);
        cmd->callback([&]() {
            exit_code = run_decompose(in_path, gate_index, method, degree, o);
        });
    }

    // ---- verify ----
    {
        static CommonOpts o;
        static std::string claim;
        static std::size_t n = 0, d = 0;
        CLI::App* cmd =
            app.add_subcommand("verify", "Run a claim check suite by id");
        std::string ids = "all";
        for (const std::string& id : known_claims()) ids += ", " + id;
        cmd->add_option("claim", claim, "Claim id: " + ids)->required();
        cmd->add_option("--n", n, "Restrict size-parameterized claims to one n");
        cmd->add_option("--d", d, "Restrict size-parameterized claims to one d");
        cmd->add_option("--seed", o.seed, "Master seed")
            ->default_val(std::to_string(kDefaultCheckSeed));
        cmd->add_option("--trials", o.trials,
                        "Instances per randomized claim (0 = default)");
        cmd->add_option("--jobs", o.jobs, "Worker threads")->default_val("1");
        add_field(cmd, o, 2);
        add_budgets(cmd, o);
        add_output(cmd, o, true);
        cmd->callback([&]() { exit_code = run_verify(claim, n, d, o); });
    }

    // ---- experiment ----
    {
        static CommonOpts o;
        CLI::App* cmd = app.add_subcommand(
            "experiment",
            "Frequency of k-weakness under random balanced partitions");
        cmd->add_option("--seed", o.seed, "Master seed")
            ->default_val(std::to_string(kDefaultCheckSeed));
        cmd->add_option("--trials", o.trials, "Partitions sampled (0 = default)");
        add_field(cmd, o, 2);
        add_output(cmd, o, true);
        cmd->callback([&]() {
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<VerdictReport> reports =
                partition_experiment(to_check_config(o));
            const std::uint64_t elapsed = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count());
            exit_code = emit_reports(reports, o, elapsed);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return exit_code;
}
