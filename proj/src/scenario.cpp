#include "qdmap/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "qdmap/closed_forms.hpp"

namespace qdmap {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); ++k)
        out += (k ? ", " : "") + xs[k];
    return out;
}

std::string key_path(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string index_path(const std::string& base, std::size_t k) { return base + "/" + std::to_string(k); }

class Reader {
public:
    explicit Reader(std::vector<Diagnostic>& diags) : diags_(diags) {}

    void error(const std::string& path, const std::string& message) { diags_.push_back({path, message}); }

    bool expect_object(const json& j, const std::string& path) {
        if (j.is_object())
            return true;
        error(path, "expected an object");
        return false;
    }

    void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
        for (const auto& [key, value] : obj.items())
            if (!allowed.count(key))
                error(key_path(path, key), "unknown field '" + key + "'");
    }

    std::optional<double> number(const json& obj, const std::string& key, const std::string& path,
                                 std::optional<double> fallback = std::nullopt) {
        if (!obj.contains(key)) {
            if (!fallback)
                error(key_path(path, key), "missing required number '" + key + "'");
            return fallback;
        }
        const json& v = obj.at(key);
        if (!v.is_number()) {
            error(key_path(path, key), "'" + key + "' must be a number");
            return std::nullopt;
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
            error(key_path(path, key), "'" + key + "' must be finite");
            return std::nullopt;
        }
        return x;
    }

    std::optional<std::vector<double>> numbers(const json& v, const std::string& path) {
        if (!v.is_array()) {
            error(path, "expected an array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (!v[k].is_number()) {
                error(index_path(path, k), "expected a number");
                return std::nullopt;
            }
            out.push_back(v[k].get<double>());
        }
        return out;
    }

    std::optional<ComplexMatrix> matrix(const json& j, const std::string& path, std::size_t n) {
        if (!expect_object(j, path))
            return std::nullopt;
        reject_unknown(j, path, {"re", "im"});
        if (!j.contains("re")) {
            error(key_path(path, "re"), "missing real part 're'");
            return std::nullopt;
        }
        const auto ni = static_cast<Eigen::Index>(n);
        ComplexMatrix m = ComplexMatrix::Zero(ni, ni);
        bool ok = fill(j.at("re"), key_path(path, "re"), n, m, 1.0);
        if (j.contains("im"))
            ok = fill(j.at("im"), key_path(path, "im"), n, m, 0.0) && ok;
        if (!ok)
            return std::nullopt;
        return m;
    }

private:
    // part: 1 fills real parts, 0 fills imaginary parts.
    bool fill(const json& rows, const std::string& path, std::size_t n, ComplexMatrix& m, double part) {
        if (!rows.is_array() || rows.size() != n) {
            error(path, "expected " + std::to_string(n) + " rows");
            return false;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = numbers(rows[i], index_path(path, i));
            if (!row)
                return false;
            if (row->size() != n) {
                error(index_path(path, i), "expected " + std::to_string(n) + " columns");
                return false;
            }
            for (std::size_t k = 0; k < n; ++k) {
                auto& z = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
                z = part == 1.0 ? Complex((*row)[k], z.imag()) : Complex(z.real(), (*row)[k]);
            }
        }
        return true;
    }

    std::vector<Diagnostic>& diags_;
};

const std::vector<std::string>& rate_families() {
    static const std::vector<std::string> f{"constant", "exponential", "sinusoidal", "polynomial", "table"};
    return f;
}

std::optional<RateFunction> read_rate(Reader& rd, const json& j, const std::string& path) {
    if (!rd.expect_object(j, path))
        return std::nullopt;
    if (!j.contains("family") || !j.at("family").is_string()) {
        rd.error(key_path(path, "family"), "missing rate family (expected one of " + join(rate_families()) + ")");
        return std::nullopt;
    }
    const std::string family = j.at("family").get<std::string>();
    if (family == "constant") {
        rd.reject_unknown(j, path, {"family", "c"});
        const auto c = rd.number(j, "c", path);
        if (c)
            return RateFunction::constant(*c);
    } else if (family == "exponential") {
        rd.reject_unknown(j, path, {"family", "c", "r"});
        const auto c = rd.number(j, "c", path);
        const auto r = rd.number(j, "r", path);
        if (c && r)
            return RateFunction::exponential(*c, *r);
    } else if (family == "sinusoidal") {
        rd.reject_unknown(j, path, {"family", "c", "omega", "phi"});
        const auto c = rd.number(j, "c", path);
        const auto w = rd.number(j, "omega", path);
        const auto phi = rd.number(j, "phi", path, 0.0);
        if (c && w && phi)
            return RateFunction::sinusoidal(*c, *w, *phi);
    } else if (family == "polynomial") {
        rd.reject_unknown(j, path, {"family", "coeffs"});
        if (!j.contains("coeffs")) {
            rd.error(key_path(path, "coeffs"), "missing coefficient array 'coeffs'");
            return std::nullopt;
        }
        if (auto c = rd.numbers(j.at("coeffs"), key_path(path, "coeffs")))
            return RateFunction::polynomial(std::move(*c));
    } else if (family == "table") {
        rd.reject_unknown(j, path, {"family", "t", "values"});
        if (!j.contains("t") || !j.contains("values")) {
            rd.error(path, "table rate needs arrays 't' and 'values'");
            return std::nullopt;
        }
        auto t = rd.numbers(j.at("t"), key_path(path, "t"));
        auto v = rd.numbers(j.at("values"), key_path(path, "values"));
        if (!t || !v)
            return std::nullopt;
        try {
            return RateFunction::table(std::move(*t), std::move(*v));
        } catch (const Error& e) {
            rd.error(key_path(path, "t"), e.what());
        }
    } else {
        rd.error(key_path(path, "family"),
                 "unknown rate family '" + family + "' (expected one of " + join(rate_families()) + ")");
    }
    return std::nullopt;
}

// --- presets -------------------------------------------------------------------

struct PresetBuild {
    std::function<Generator()> build;
    TimeGrid grid{1.0, 1};
};

using PresetParser = std::function<std::optional<PresetBuild>(Reader&, const json&, const std::string&, std::size_t)>;

struct PresetEntry {
    PresetInfo info;
    std::optional<std::size_t> required_dim;
    PresetParser parse;
};

std::optional<RateFunction> rate_param(Reader& rd, const json& params, const std::string& key, const std::string& path,
                                       const RateFunction& fallback) {
    if (!params.contains(key))
        return fallback;
    return read_rate(rd, params.at(key), key_path(path, key));
}

std::optional<double> nonnegative(Reader& rd, const json& params, const std::string& key, const std::string& path,
                                  double fallback) {
    const auto v = rd.number(params, key, path, fallback);
    if (v && *v < 0.0) {
        rd.error(key_path(path, key), "'" + key + "' must be nonnegative");
        return std::nullopt;
    }
    return v;
}

const std::vector<PresetEntry>& registry() {
    static const std::vector<PresetEntry> entries = [] {
        std::vector<PresetEntry> e;
        e.push_back({{"example5_projector", "L = gamma (Phi - 1) with Phi the diagonal projector (Phi^2 = Phi)",
                      "gamma = 1"},
                     std::nullopt,
                     [](Reader& rd, const json& p, const std::string& path, std::size_t dim) -> std::optional<PresetBuild> {
                         rd.reject_unknown(p, path, {"gamma"});
                         const auto g = rd.number(p, "gamma", path, 1.0);
                         if (!g)
                             return std::nullopt;
                         const double gamma = *g;
                         return PresetBuild{[gamma, dim] {
                                                return constant_generator(
                                                    phi_generator(diagonal_projector(dim), gamma), "example5_projector");
                                            },
                                            TimeGrid(5.0, 5000)};
                     }});
        e.push_back({{"example6_sigma_z", "L = gamma (sz . sz - 1), an involution semigroup", "gamma = 1"},
                     2,
                     [](Reader& rd, const json& p, const std::string& path, std::size_t) -> std::optional<PresetBuild> {
                         rd.reject_unknown(p, path, {"gamma"});
                         const auto g = rd.number(p, "gamma", path, 1.0);
                         if (!g)
                             return std::nullopt;
                         const double gamma = *g;
                         return PresetBuild{[gamma] {
                                                return constant_generator(phi_generator(sigma_z_conjugation(), gamma),
                                                                          "example6_sigma_z");
                                            },
                                            TimeGrid(5.0, 5000)};
                     }});
        e.push_back({{"example7_pump_cool",
                      "H = omega/2 sz with pumping (s+, gamma1), cooling (s-, gamma2) and dephasing (gamma/2 L3)",
                      "omega = 1, gamma1 = 0.7, gamma2 = 0.3, gamma = 0.2"},
                     2,
                     [](Reader& rd, const json& p, const std::string& path, std::size_t) -> std::optional<PresetBuild> {
                         rd.reject_unknown(p, path, {"omega", "gamma1", "gamma2", "gamma"});
                         const auto w = rd.number(p, "omega", path, 1.0);
                         const auto g1 = nonnegative(rd, p, "gamma1", path, 0.7);
                         const auto g2 = nonnegative(rd, p, "gamma2", path, 0.3);
                         const auto g = nonnegative(rd, p, "gamma", path, 0.2);
                         if (!w || !g1 || !g2 || !g)
                             return std::nullopt;
                         const PumpCoolParams pc{*w, *g1, *g2, *g};
                         return PresetBuild{[pc] { return as_generator(pump_cool_spec(pc)); }, TimeGrid(10.0, 10000)};
                     }});
        e.push_back({{"example9_random_unitary", "L_t = 1/2 sum_k gamma_k(t) (s_k . s_k - 1), commuting family",
                      "rates = [constant 1, constant 0.5, constant 0.25]"},
                     2,
                     [](Reader& rd, const json& p, const std::string& path, std::size_t) -> std::optional<PresetBuild> {
                         rd.reject_unknown(p, path, {"rates"});
                         std::array<RateFunction, 3> rates{RateFunction::constant(1.0), RateFunction::constant(0.5),
                                                           RateFunction::constant(0.25)};
                         if (p.contains("rates")) {
                             const json& r = p.at("rates");
                             const std::string rp = key_path(path, "rates");
                             if (!r.is_array() || r.size() != 3) {
                                 rd.error(rp, "'rates' must be an array of three rate descriptors");
                                 return std::nullopt;
                             }
                             for (std::size_t k = 0; k < 3; ++k) {
                                 auto rate = read_rate(rd, r[k], index_path(rp, k));
                                 if (!rate)
                                     return std::nullopt;
                                 rates[k] = *rate;
                             }
                         }
                         return PresetBuild{[rates] { return as_generator(random_unitary_spec(rates)); },
                                            TimeGrid(5.0, 5000)};
                     }});
        e.push_back({{"example10_pure_decoherence", "L_t = gamma(t)/2 (sz . sz - 1)",
                      "rate = sinusoidal(c = 1, omega = 1, phi = 0)"},
                     2,
                     [](Reader& rd, const json& p, const std::string& path, std::size_t) -> std::optional<PresetBuild> {
                         rd.reject_unknown(p, path, {"rate"});
                         const auto rate = rate_param(rd, p, "rate", path, RateFunction::sinusoidal(1.0, 1.0, 0.0));
                         if (!rate)
                             return std::nullopt;
                         const RateFunction r = *rate;
                         return PresetBuild{[r] { return as_generator(pure_decoherence_spec(r)); },
                                            TimeGrid(2.0 * std::numbers::pi, 6283)};
                     }});
        e.push_back({{"remark6_counterexample",
                      "L_t = omega_t Tr - 1 with omega_t = I/2 + 0.65 sin(4 pi t) sx: trace distances contract "
                      "although some step propagators are not CP",
                      "none"},
                     2,
                     [](Reader& rd, const json& p, const std::string& path, std::size_t) -> std::optional<PresetBuild> {
                         rd.reject_unknown(p, path, {});
                         return PresetBuild{[] { return trace_gen_generator(blp_counterexample_scenario().params); },
                                            TimeGrid(2.0, 1000)};
                     }});
        e.push_back({{"wilcox_l1l2",
                      "L_t = b1(t) l1 + b2(t) l2 with b from the rates a1, a2 of exp(A1 l1 + A2 l2)",
                      "a1 = constant 1, a2 = polynomial [0, 1]"},
                     2,
                     [](Reader& rd, const json& p, const std::string& path, std::size_t) -> std::optional<PresetBuild> {
                         rd.reject_unknown(p, path, {"a1", "a2"});
                         const auto a1 = rate_param(rd, p, "a1", path, RateFunction::constant(1.0));
                         const auto a2 = rate_param(rd, p, "a2", path, RateFunction::polynomial({0.0, 1.0}));
                         if (!a1 || !a2)
                             return std::nullopt;
                         const WilcoxPair pair{*a1, *a2};
                         return PresetBuild{[pair] { return wilcox_generator(pair); }, TimeGrid(2.0, 2000)};
                     }});
        return e;
    }();
    return entries;
}

const PresetEntry* find_preset(const std::string& name) {
    for (const auto& e : registry())
        if (e.info.name == name)
            return &e;
    return nullptr;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& e : registry())
        out.push_back(e.info.name);
    return out;
}

std::optional<InitialState> read_state(Reader& rd, const json& j, const std::string& path, std::size_t dim) {
    if (!rd.expect_object(j, path))
        return std::nullopt;
    rd.reject_unknown(j, path, {"bloch", "named", "matrix", "label"});
    const int kinds = static_cast<int>(j.contains("bloch")) + static_cast<int>(j.contains("named")) +
                      static_cast<int>(j.contains("matrix"));
    if (kinds != 1) {
        rd.error(path, "a state needs exactly one of 'bloch', 'named' or 'matrix'");
        return std::nullopt;
    }
    std::string label;
    if (j.contains("label")) {
        if (!j.at("label").is_string()) {
            rd.error(key_path(path, "label"), "'label' must be a string");
            return std::nullopt;
        }
        label = j.at("label").get<std::string>();
    }
    try {
        if (j.contains("bloch")) {
            const std::string bp = key_path(path, "bloch");
            if (dim != 2) {
                rd.error(bp, "Bloch vectors need dim = 2");
                return std::nullopt;
            }
            const auto v = rd.numbers(j.at("bloch"), bp);
            if (!v)
                return std::nullopt;
            if (v->size() != 3) {
                rd.error(bp, "a Bloch vector has three components");
                return std::nullopt;
            }
            const BlochVector b{(*v)[0], (*v)[1], (*v)[2]};
            if (b.norm() > 1.0 + 1e-12) {
                rd.error(bp, "Bloch vector norm exceeds 1");
                return std::nullopt;
            }
            std::ostringstream os;
            os << "bloch(" << b.x1 << "," << b.x2 << "," << b.x3 << ")";
            return InitialState{label.empty() ? os.str() : label, bloch_to_state(b).matrix()};
        }
        if (j.contains("named")) {
            const std::string np = key_path(path, "named");
            if (!j.at("named").is_string()) {
                rd.error(np, "'named' must be a string");
                return std::nullopt;
            }
            const std::string name = j.at("named").get<std::string>();
            if (name == "maximally_mixed")
                return InitialState{label.empty() ? name : label, DensityMatrix::maximally_mixed(dim).matrix()};
            static const std::map<std::string, BlochVector> qubit_states{
                {"plus_x", {1, 0, 0}}, {"minus_x", {-1, 0, 0}}, {"plus_y", {0, 1, 0}},
                {"minus_y", {0, -1, 0}}, {"plus_z", {0, 0, 1}}, {"minus_z", {0, 0, -1}}};
            const auto it = qubit_states.find(name);
            if (it == qubit_states.end()) {
                rd.error(np, "unknown state '" + name +
                                 "' (expected maximally_mixed, plus_x, minus_x, plus_y, minus_y, plus_z, minus_z)");
                return std::nullopt;
            }
            if (dim != 2) {
                rd.error(np, "'" + name + "' needs dim = 2");
                return std::nullopt;
            }
            return InitialState{label.empty() ? name : label, bloch_to_state(it->second).matrix()};
        }
        const auto m = rd.matrix(j.at("matrix"), key_path(path, "matrix"), dim);
        if (!m)
            return std::nullopt;
        const DensityMatrix rho(*m);
        return InitialState{label.empty() ? "matrix" : label, rho.matrix()};
    } catch (const Error& e) {
        rd.error(path, e.what());
    }
    return std::nullopt;
}

std::optional<std::uint64_t> read_count(Reader& rd, const json& obj, const std::string& key, const std::string& path,
                                        std::uint64_t min_value) {
    const json& v = obj.at(key);
    const std::string p = key_path(path, key);
    if (!v.is_number_integer()) {
        rd.error(p, "'" + key + "' must be an integer");
        return std::nullopt;
    }
    if (v.is_number_unsigned() ? v.get<std::uint64_t>() < min_value : v.get<std::int64_t>() < static_cast<std::int64_t>(min_value)) {
        rd.error(p, "'" + key + "' must be >= " + std::to_string(min_value));
        return std::nullopt;
    }
    return v.get<std::uint64_t>();
}

} // namespace

std::optional<RateFunction> parse_rate(const json& j, const std::string& path, std::vector<Diagnostic>& diags) {
    Reader rd(diags);
    return read_rate(rd, j, path);
}

json rate_to_json(const RateFunction& r) {
    const auto& p = r.params();
    switch (r.family()) {
    case RateFunction::Family::Constant: return {{"family", "constant"}, {"c", p[0]}};
    case RateFunction::Family::Exponential: return {{"family", "exponential"}, {"c", p[0]}, {"r", p[1]}};
    case RateFunction::Family::Sinusoidal:
        return {{"family", "sinusoidal"}, {"c", p[0]}, {"omega", p[1]}, {"phi", p[2]}};
    case RateFunction::Family::Polynomial: return {{"family", "polynomial"}, {"coeffs", p}};
    case RateFunction::Family::Table: return {{"family", "table"}, {"t", r.knot_times()}, {"values", p}};
    }
    return {};
}

const std::vector<PresetInfo>& preset_table() {
    static const std::vector<PresetInfo> table = [] {
        std::vector<PresetInfo> out;
        for (const auto& e : registry())
            out.push_back(e.info);
        return out;
    }();
    return table;
}

bool preset_exists(const std::string& name) { return find_preset(name) != nullptr; }

const std::vector<std::string>& known_analyses() {
    static const std::vector<std::string> a{"evolve", "legitimacy", "divisibility", "blp", "classify"};
    return a;
}

ParseResult parse_scenario(const json& doc) {
    ParseResult res;
    Reader rd(res.diagnostics);
    if (!rd.expect_object(doc, ""))
        return res;
    rd.reject_unknown(doc, "", {"schema_version", "name", "description", "dim", "generator", "grid", "initial_states",
                                "analyses", "seed", "blp_pairs", "tolerances"});

    Scenario sc;
    sc.source = doc;

    if (!doc.contains("schema_version"))
        rd.error("/schema_version", "missing 'schema_version' (expected 1)");
    else if (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kSchemaVersion)
        rd.error("/schema_version", "unsupported schema_version (expected 1)");

    if (!doc.contains("name") || !doc.at("name").is_string() || doc.at("name").get<std::string>().empty())
        rd.error("/name", "'name' must be a non-empty string");
    else
        sc.name = doc.at("name").get<std::string>();

    if (!doc.contains("dim"))
        rd.error("/dim", "missing 'dim'");
    else if (auto d = read_count(rd, doc, "dim", "", 1))
        sc.dim = static_cast<std::size_t>(*d);

    std::optional<TimeGrid> preset_grid;
    if (!doc.contains("generator")) {
        rd.error("/generator", "missing 'generator'");
    } else if (const json& g = doc.at("generator"); rd.expect_object(g, "/generator")) {
        if (g.contains("preset")) {
            rd.reject_unknown(g, "/generator", {"preset", "params"});
            sc.generator_kind = "preset";
            const json& name = g.at("preset");
            const PresetEntry* entry = name.is_string() ? find_preset(name.get<std::string>()) : nullptr;
            if (!entry) {
                rd.error("/generator/preset", "unknown preset (expected one of " + join(preset_names()) + ")");
            } else {
                sc.preset = entry->info.name;
                if (entry->required_dim && *entry->required_dim != sc.dim)
                    rd.error("/dim", "preset '" + sc.preset + "' needs dim = " + std::to_string(*entry->required_dim));
                const json params = g.contains("params") ? g.at("params") : json::object();
                if (rd.expect_object(params, "/generator/params"))
                    if (auto built = entry->parse(rd, params, "/generator/params", sc.dim)) {
                        sc.build = built->build;
                        preset_grid = built->grid;
                    }
            }
        } else {
            rd.reject_unknown(g, "/generator", {"hamiltonian", "jumps"});
            sc.generator_kind = "gksl";
            GkslSpec spec;
            spec.dim = sc.dim;
            const auto n = static_cast<Eigen::Index>(sc.dim);
            spec.hamiltonian = ComplexMatrix::Zero(n, n);
            bool ok = true;
            if (g.contains("hamiltonian")) {
                if (auto h = rd.matrix(g.at("hamiltonian"), "/generator/hamiltonian", sc.dim)) {
                    if (!is_hermitian(*h, 1e-10)) {
                        rd.error("/generator/hamiltonian", "Hamiltonian is not Hermitian");
                        ok = false;
                    }
                    spec.hamiltonian = *h;
                } else {
                    ok = false;
                }
            }
            if (!g.contains("jumps") || !g.at("jumps").is_array()) {
                rd.error("/generator/jumps", "'jumps' must be an array (possibly empty)");
                ok = false;
            } else {
                const json& jumps = g.at("jumps");
                for (std::size_t k = 0; k < jumps.size(); ++k) {
                    const std::string jp = index_path("/generator/jumps", k);
                    if (!rd.expect_object(jumps[k], jp)) {
                        ok = false;
                        continue;
                    }
                    rd.reject_unknown(jumps[k], jp, {"operator", "rate"});
                    std::optional<ComplexMatrix> op;
                    std::optional<RateFunction> rate;
                    if (!jumps[k].contains("operator"))
                        rd.error(key_path(jp, "operator"), "missing jump 'operator'");
                    else
                        op = rd.matrix(jumps[k].at("operator"), key_path(jp, "operator"), sc.dim);
                    if (!jumps[k].contains("rate"))
                        rd.error(key_path(jp, "rate"), "missing jump 'rate'");
                    else
                        rate = read_rate(rd, jumps[k].at("rate"), key_path(jp, "rate"));
                    if (op && rate)
                        spec.jumps.push_back({*op, *rate});
                    else
                        ok = false;
                }
            }
            if (ok)
                sc.build = [spec] { return as_generator(spec); };
        }
    }

    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        if (rd.expect_object(g, "/grid")) {
            rd.reject_unknown(g, "/grid", {"t_end", "steps"});
            const auto t_end = rd.number(g, "t_end", "/grid");
            std::optional<std::uint64_t> steps;
            if (!g.contains("steps"))
                rd.error("/grid/steps", "missing 'steps'");
            else if (!g.at("steps").is_number_integer())
                rd.error("/grid/steps", "grid.steps must be an integer");
            else if (g.at("steps").get<std::int64_t>() < 1)
                rd.error("/grid/steps", "grid.steps must be ≥ 1");
            else
                steps = g.at("steps").get<std::uint64_t>();
            if (t_end && !(*t_end > 0.0))
                rd.error("/grid/t_end", "grid.t_end must be > 0");
            else if (t_end && steps)
                sc.grid = TimeGrid(*t_end, static_cast<std::size_t>(*steps));
        }
    } else if (preset_grid) {
        sc.grid = *preset_grid;
    } else if (sc.generator_kind == "gksl") {
        rd.error("/grid", "missing 'grid' (only presets supply a default)");
    }

    if (doc.contains("initial_states")) {
        const json& states = doc.at("initial_states");
        if (!states.is_array()) {
            rd.error("/initial_states", "'initial_states' must be an array");
        } else {
            for (std::size_t k = 0; k < states.size(); ++k)
                if (auto s = read_state(rd, states[k], index_path("/initial_states", k), sc.dim))
                    sc.initial_states.push_back(std::move(*s));
        }
    }

    if (doc.contains("analyses")) {
        const json& a = doc.at("analyses");
        if (!a.is_array()) {
            rd.error("/analyses", "'analyses' must be an array");
        } else {
            for (std::size_t k = 0; k < a.size(); ++k) {
                const std::string ap = index_path("/analyses", k);
                if (!a[k].is_string()) {
                    rd.error(ap, "analysis names are strings");
                    continue;
                }
                const std::string name = a[k].get<std::string>();
                const auto& known = known_analyses();
                if (std::find(known.begin(), known.end(), name) == known.end())
                    rd.error(ap, "unknown analysis '" + name + "' (expected one of " + join(known) + ")");
                else if (std::find(sc.analyses.begin(), sc.analyses.end(), name) == sc.analyses.end())
                    sc.analyses.push_back(name);
            }
        }
    } else {
        sc.analyses = known_analyses();
    }

    if (doc.contains("seed"))
        if (auto s = read_count(rd, doc, "seed", "", 0))
            sc.seed = *s;
    if (doc.contains("blp_pairs"))
        if (auto p = read_count(rd, doc, "blp_pairs", "", 1))
            sc.blp_pairs = static_cast<std::size_t>(*p);

    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        if (rd.expect_object(t, "/tolerances")) {
            rd.reject_unknown(t, "/tolerances", {"div", "blp", "cp", "tp", "constancy"});
            auto set = [&](const char* key, double& slot) {
                if (!t.contains(key))
                    return;
                const auto v = rd.number(t, key, "/tolerances");
                if (v && *v <= 0.0)
                    rd.error(key_path("/tolerances", key), std::string("tolerances.") + key + " must be > 0");
                else if (v)
                    slot = *v;
            };
            set("div", sc.tolerances.div);
            set("blp", sc.tolerances.blp);
            set("cp", sc.tolerances.cp);
            set("tp", sc.tolerances.tp);
            set("constancy", sc.tolerances.constancy);
        }
    }

    if (res.diagnostics.empty())
        res.scenario = std::move(sc);
    return res;
}

ParseResult load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseResult res;
        res.diagnostics.push_back({"", "cannot open '" + path + "'"});
        return res;
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        ParseResult res;
        res.diagnostics.push_back({"", std::string("invalid JSON: ") + e.what()});
        return res;
    }
    return parse_scenario(doc);
}

} // namespace qdmap
