#include "maxrank/circuit_json.hpp"

#include <functional>

#include "json.hpp"

#include "maxrank/errors.hpp"

namespace maxrank {

namespace {

using Json = nlohmann::ordered_json;

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("circuit JSON: ") + e.what());
    }
}

std::uint32_t reduce_number(const Json& j, const Field& field, const char* what) {
    if (!j.is_number_integer())
        throw ParseError(std::string(what) + " must be an integer");
    return field.reduce(j.get<std::int64_t>());
}

class NameTable {
public:
    // Fixed universe: names must resolve. Open universe: names intern in
    // encounter order.
    explicit NameTable(UniversePtr fixed) : fixed_(std::move(fixed)) {}

    void touch(const std::string& name) {
        if (fixed_) return;
        if (index_.emplace(name, names_.size()).second) names_.push_back(name);
    }

    UniversePtr finish() {
        if (fixed_) return fixed_;
        return VarUniverse::of(std::move(names_));
    }

private:
    UniversePtr fixed_;
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

Field field_of(const Json& j, const std::optional<Field>& default_field) {
    if (j.contains("field")) {
        const Json& f = j["field"];
        if (!f.is_number_unsigned())
            throw ParseError("\"field\" must be a prime modulus");
        return Field(f.get<std::uint32_t>());
    }
    if (default_field) return *default_field;
    throw InputError("circuit JSON has no \"field\" key and no field was given");
}

std::optional<UniversePtr> vars_of(const Json& j) {
    if (!j.contains("vars")) return std::nullopt;
    const Json& v = j["vars"];
    if (!v.is_array()) throw ParseError("\"vars\" must be an array of names");
    std::vector<std::string> names;
    for (const auto& item : v) {
        if (!item.is_string()) throw ParseError("\"vars\" must be an array of names");
        names.push_back(item.get<std::string>());
    }
    return VarUniverse::of(std::move(names));
}

AffineForm form_from_json(const Json& j, const Field& field,
                          const UniversePtr& universe) {
    if (!j.is_object()) throw ParseError("affine form must be an object");
    AffineForm form;
    if (j.contains("c")) form.constant = reduce_number(j["c"], field, "form constant");
    if (j.contains("lin")) {
        const Json& lin = j["lin"];
        if (!lin.is_object()) throw ParseError("\"lin\" must map names to coefficients");
        for (const auto& [name, coeff] : lin.items()) {
            std::uint32_t c = reduce_number(coeff, field, "form coefficient");
            if (c != 0) form.linear[universe->require(name)] = c;
        }
    }
    return form;
}

void scan_form_names(const Json& j, NameTable& table) {
    if (j.is_object() && j.contains("lin") && j["lin"].is_object())
        for (const auto& [name, coeff] : j["lin"].items()) {
            (void)coeff;
            table.touch(name);
        }
}

Json form_to_json(const AffineForm& form, const UniversePtr& universe) {
    Json j;
    j["c"] = form.constant;
    Json lin = Json::object();
    for (const auto& [v, c] : form.linear) lin[universe->name(v)] = c;
    j["lin"] = std::move(lin);
    return j;
}

void scan_formula_names(const Json& node, NameTable& table) {
    if (!node.is_object()) throw ParseError("formula node must be an object");
    if (node.contains("op")) {
        if (!node.contains("l") || !node.contains("r"))
            throw ParseError("gate node needs \"l\" and \"r\" children");
        scan_formula_names(node["l"], table);
        scan_formula_names(node["r"], table);
    } else if (node.contains("var")) {
        if (!node["var"].is_string()) throw ParseError("\"var\" must be a name");
        table.touch(node["var"].get<std::string>());
    } else if (node.contains("upoly")) {
        const Json& u = node["upoly"];
        if (!u.is_object() || !u.contains("var") || !u["var"].is_string())
            throw ParseError("\"upoly\" needs a \"var\" name");
        table.touch(u["var"].get<std::string>());
    } else if (!node.contains("const")) {
        throw ParseError("formula node must be a gate, var, const or upoly");
    }
}

std::uint32_t build_formula_node(const Json& node, Formula& f) {
    if (node.contains("op")) {
        const std::string op = node["op"].is_string() ? node["op"].get<std::string>()
                                                      : std::string();
        std::uint32_t l = build_formula_node(node["l"], f);
        std::uint32_t r = build_formula_node(node["r"], f);
        if (op == "+") return f.add_plus(l, r);
        if (op == "*") return f.add_times(l, r);
        throw ParseError("gate \"op\" must be \"+\" or \"*\"");
    }
    if (node.contains("var"))
        return f.add_var(f.universe()->require(node["var"].get<std::string>()));
    if (node.contains("const"))
        return f.add_const(reduce_number(node["const"], f.field(), "constant leaf"));
    const Json& u = node["upoly"];
    if (!u.contains("coeffs") || !u["coeffs"].is_array())
        throw ParseError("\"upoly\" needs a \"coeffs\" array");
    std::vector<std::uint32_t> coeffs;
    for (const auto& c : u["coeffs"])
        coeffs.push_back(reduce_number(c, f.field(), "upoly coefficient"));
    return f.add_upoly(f.universe()->require(u["var"].get<std::string>()),
                       std::move(coeffs));
}

Formula formula_from_json(const Json& j, Field field, std::optional<UniversePtr> vars) {
    if (!j.contains("root")) throw ParseError("formula JSON needs a \"root\" node");
    NameTable table(vars ? *vars : nullptr);
    scan_formula_names(j["root"], table);
    Formula f(field, table.finish());
    build_formula_node(j["root"], f);
    f.validate();
    return f;
}

SigmaPiSigma sps_from_json(const Json& j, Field field, std::optional<UniversePtr> vars) {
    if (!j.contains("gates") || !j["gates"].is_array())
        throw ParseError("sps JSON needs a \"gates\" array");
    NameTable table(vars ? *vars : nullptr);
    for (const auto& gate : j["gates"]) {
        if (!gate.is_array()) throw ParseError("each gate must be an array of forms");
        for (const auto& form : gate) scan_form_names(form, table);
    }
    SigmaPiSigma c(field, table.finish());
    for (const auto& gate : j["gates"]) {
        std::vector<AffineForm> forms;
        for (const auto& form : gate)
            forms.push_back(form_from_json(form, field, c.universe));
        c.gates.push_back(std::move(forms));
    }
    c.validate();
    return c;
}

Abp abp_from_json(const Json& j, Field field, std::optional<UniversePtr> vars) {
    if (!j.contains("levels") || !j["levels"].is_array())
        throw ParseError("abp JSON needs a \"levels\" array");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ParseError("abp JSON needs an \"edges\" array");
    NameTable table(vars ? *vars : nullptr);
    for (const auto& e : j["edges"])
        if (e.is_object() && e.contains("w")) scan_form_names(e["w"], table);
    Abp abp(field, table.finish());
    for (const auto& level : j["levels"]) {
        if (!level.is_array()) throw ParseError("each level must be an array of ids");
        std::vector<std::uint32_t> ids;
        for (const auto& id : level) {
            if (!id.is_number_unsigned()) throw ParseError("node ids must be unsigned");
            ids.push_back(id.get<std::uint32_t>());
        }
        abp.levels.push_back(std::move(ids));
    }
    for (const auto& e : j["edges"]) {
        if (!e.is_object() || !e.contains("from") || !e.contains("to"))
            throw ParseError("each edge needs \"from\" and \"to\"");
        Abp::Edge edge;
        if (!e["from"].is_number_unsigned() || !e["to"].is_number_unsigned())
            throw ParseError("edge endpoints must be unsigned ids");
        edge.from = e["from"].get<std::uint32_t>();
        edge.to = e["to"].get<std::uint32_t>();
        if (e.contains("w")) edge.weight = form_from_json(e["w"], field, abp.universe);
        abp.edges.push_back(std::move(edge));
    }
    abp.validate();
    return abp;
}

} // namespace

Circuit circuit_from_json(const std::string& text, std::optional<Field> default_field) {
    Json j = parse_text(text);
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("circuit JSON needs a \"kind\" key");
    const std::string kind = j["kind"].get<std::string>();
    Field field = field_of(j, default_field);
    auto vars = vars_of(j);
    if (kind == "formula") return formula_from_json(j, field, vars);
    if (kind == "sps") return sps_from_json(j, field, vars);
    if (kind == "abp") return abp_from_json(j, field, vars);
    throw ParseError("unknown circuit kind '" + kind + "'");
}

namespace {

Json formula_node_to_json(const Formula& f, std::uint32_t id) {
    const auto& n = f.node(id);
    Json j;
    switch (n.kind) {
        case Formula::Kind::Var:
            j["var"] = f.universe()->name(n.var);
            break;
        case Formula::Kind::Const:
            j["const"] = n.constant;
            break;
        case Formula::Kind::UPoly: {
            Json u;
            u["var"] = f.universe()->name(n.var);
            u["coeffs"] = n.coeffs;
            j["upoly"] = std::move(u);
            break;
        }
        case Formula::Kind::Plus:
        case Formula::Kind::Times:
            j["op"] = n.kind == Formula::Kind::Plus ? "+" : "*";
            j["l"] = formula_node_to_json(f, n.left);
            j["r"] = formula_node_to_json(f, n.right);
            break;
    }
    return j;
}

Json header(const char* kind, const Field& field, const UniversePtr& universe) {
    Json j;
    j["kind"] = kind;
    j["field"] = field.modulus();
    j["vars"] = universe->names();
    return j;
}

} // namespace

std::string circuit_to_json(const Formula& f) {
    Json j = header("formula", f.field(), f.universe());
    j["root"] = formula_node_to_json(f, f.root());
    return j.dump(2);
}

std::string circuit_to_json(const SigmaPiSigma& c) {
    Json j = header("sps", c.field, c.universe);
    Json gates = Json::array();
    for (const auto& gate : c.gates) {
        Json forms = Json::array();
        for (const auto& form : gate) forms.push_back(form_to_json(form, c.universe));
        gates.push_back(std::move(forms));
    }
    j["gates"] = std::move(gates);
    return j.dump(2);
}

std::string circuit_to_json(const Abp& a) {
    Json j = header("abp", a.field, a.universe);
    j["levels"] = a.levels;
    Json edges = Json::array();
    for (const auto& e : a.edges) {
        Json edge;
        edge["from"] = e.from;
        edge["to"] = e.to;
        edge["w"] = form_to_json(e.weight, a.universe);
        edges.push_back(std::move(edge));
    }
    j["edges"] = std::move(edges);
    return j.dump(2);
}

std::string circuit_to_json(const Circuit& c) {
    return std::visit([](const auto& x) { return circuit_to_json(x); }, c);
}

const char* circuit_kind(const Circuit& c) {
    switch (c.index()) {
        case 0: return "formula";
        case 1: return "sps";
        default: return "abp";
    }
}

const Field& circuit_field(const Circuit& c) {
    return std::visit(
        [](const auto& x) -> const Field& {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Formula>)
                return x.field();
            else
                return x.field;
        },
        c);
}

const UniversePtr& circuit_universe(const Circuit& c) {
    return std::visit(
        [](const auto& x) -> const UniversePtr& {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Formula>)
                return x.universe();
            else
                return x.universe;
        },
        c);
}

Polynomial circuit_expand(const Circuit& c, std::uint64_t budget) {
    return std::visit([budget](const auto& x) { return x.expand(budget); }, c);
}

} // namespace maxrank
