// JSON config and document serialization for the CLI. Parsing is strict:
// unknown keys are rejected at every nesting level so that a typo like
// "tol_rel" fails loudly instead of silently running with a default.
// Emission uses a fixed key order and nlohmann's shortest-round-trip float
// formatting, which makes every document byte-stable across reruns.

#include "shintani/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "shintani/ball.hpp"

namespace shintani {
namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& code, const std::string& message) {
    throw ConfigError(code, message);
}

void expect_object(const ojson& v, const std::string& where,
                   const std::string& ns) {
    if (!v.is_object()) fail(ns + ".type", where + " must be a JSON object");
}

void reject_unknown(const ojson& o, const std::string& where,
                    std::initializer_list<const char*> allowed,
                    const std::string& ns) {
    for (auto it = o.begin(); it != o.end(); ++it) {
        bool known = false;
        for (const char* a : allowed) {
            if (it.key() == a) {
                known = true;
                break;
            }
        }
        if (!known)
            fail(ns + ".unknown_key",
                 "unrecognized key '" + it.key() + "' in " + where);
    }
}

const ojson* find(const ojson& o, const char* key) {
    auto it = o.find(key);
    return it == o.end() || it->is_null() ? nullptr : &*it;
}

long get_long(const ojson& v, const std::string& where, const std::string& ns) {
    if (!v.is_number_integer()) fail(ns + ".type", where + " must be an integer");
    return v.get<long>();
}

std::uint64_t get_u64(const ojson& v, const std::string& where,
                      const std::string& ns) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0)
        return static_cast<std::uint64_t>(v.get<long long>());
    fail(ns + ".type", where + " must be a non-negative integer");
}

double get_double(const ojson& v, const std::string& where,
                  const std::string& ns) {
    if (!v.is_number()) fail(ns + ".type", where + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(ns + ".type", where + " must be finite");
    return d;
}

Int get_bigint(const ojson& v, const std::string& where, const std::string& ns) {
    if (v.is_number_integer()) return Int(v.get<long>());
    if (v.is_string()) {
        try {
            return Int(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            fail(ns + ".integer", where + " is not a valid integer literal");
        }
    }
    fail(ns + ".type", where + " must be an integer or an integer string");
}

Rat get_rat(const ojson& v, const std::string& where, const std::string& ns) {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) {
        try {
            return parse_rat(v.get<std::string>());
        } catch (const ValidationError& e) {
            fail(ns + ".rational", where + ": " + e.what());
        }
    }
    fail(ns + ".type", where + " must be an integer or a \"p/q\" string");
}

std::vector<Rat> get_rat_vector(const ojson& v, const std::string& where,
                                const std::string& ns) {
    if (!v.is_array()) fail(ns + ".type", where + " must be an array");
    std::vector<Rat> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(get_rat(v[i], where + "[" + std::to_string(i) + "]", ns));
    return out;
}

std::vector<std::vector<Rat>> get_rat_matrix(const ojson& v,
                                             const std::string& where,
                                             const std::string& ns) {
    if (!v.is_array()) fail(ns + ".type", where + " must be an array of arrays");
    std::vector<std::vector<Rat>> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(
            get_rat_vector(v[i], where + "[" + std::to_string(i) + "]", ns));
    return out;
}

ojson rat_vector_json(const std::vector<Rat>& v) {
    ojson a = ojson::array();
    for (const Rat& x : v) a.push_back(rat_to_string(x));
    return a;
}

ojson rat_matrix_json(const std::vector<std::vector<Rat>>& m) {
    ojson a = ojson::array();
    for (const auto& row : m) a.push_back(rat_vector_json(row));
    return a;
}

ojson elements_json(const std::vector<FieldElement>& elems) {
    ojson a = ojson::array();
    for (const FieldElement& e : elems) a.push_back(rat_vector_json(e.c));
    return a;
}

ojson bigint_json(const Int& z) {
    if (z.fits_slong_p()) return ojson(z.get_si());
    return ojson(z.get_str());
}

std::string tau1_convention(int sign) {
    return sign < 0
               ? "tau_1 is the complex embedding with Im(tau_1(gamma)) < 0"
               : "tau_1 is the complex embedding with Im(tau_1(gamma)) > 0";
}

std::string fmt_double(double d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", d);
    return buf;
}

// ---- config <-> json ------------------------------------------------------

RunConfig config_from_json(const ojson& root, const std::string& ns) {
    expect_object(root, "the configuration", ns);
    reject_unknown(root, "the configuration",
                   {"field", "units", "N", "alphas", "alpha_search_bound",
                    "precision_bits", "seed", "verify", "zeta", "slice"},
                   ns);
    RunConfig cfg;

    const ojson* field = find(root, "field");
    if (!field) fail(ns + ".missing", "configuration needs a 'field' block");
    expect_object(*field, "field", ns);
    reject_unknown(*field, "field", {"min_poly", "tau1_im_sign"}, ns);
    const ojson* mp = find(*field, "min_poly");
    if (!mp) fail(ns + ".missing", "field needs 'min_poly'");
    if (!mp->is_array()) fail(ns + ".type", "field.min_poly must be an array");
    cfg.min_poly.clear();
    for (std::size_t i = 0; i < mp->size(); ++i)
        cfg.min_poly.push_back(get_bigint(
            (*mp)[i], "field.min_poly[" + std::to_string(i) + "]", ns));
    if (const ojson* s = find(*field, "tau1_im_sign"))
        cfg.tau1_im_sign = static_cast<int>(get_long(*s, "field.tau1_im_sign", ns));

    const ojson* units = find(root, "units");
    if (!units) fail(ns + ".missing", "configuration needs 'units'");
    cfg.units = get_rat_matrix(*units, "units", ns);

    if (const ojson* v = find(root, "N"))
        cfg.N = static_cast<int>(get_long(*v, "N", ns));
    if (const ojson* v = find(root, "alphas"))
        cfg.alphas = get_rat_matrix(*v, "alphas", ns);
    if (const ojson* v = find(root, "alpha_search_bound"))
        cfg.alpha_search_bound =
            static_cast<int>(get_long(*v, "alpha_search_bound", ns));
    if (const ojson* v = find(root, "precision_bits"))
        cfg.precision_bits = get_long(*v, "precision_bits", ns);
    if (const ojson* v = find(root, "seed")) cfg.seed = get_u64(*v, "seed", ns);

    if (const ojson* v = find(root, "verify")) {
        expect_object(*v, "verify", ns);
        reject_unknown(*v, "verify",
                       {"samples", "margin", "coeff_bound", "den_bound"}, ns);
        if (const ojson* w = find(*v, "samples"))
            cfg.verify.samples = get_u64(*w, "verify.samples", ns);
        if (const ojson* w = find(*v, "margin"))
            cfg.verify.margin = get_double(*w, "verify.margin", ns);
        if (const ojson* w = find(*v, "coeff_bound"))
            cfg.verify.coeff_bound = get_long(*w, "verify.coeff_bound", ns);
        if (const ojson* w = find(*v, "den_bound"))
            cfg.verify.den_bound = get_long(*w, "verify.den_bound", ns);
    }

    if (const ojson* v = find(root, "zeta")) {
        expect_object(*v, "zeta", ns);
        reject_unknown(*v, "zeta",
                       {"s", "tol", "shell_cap", "norm_a", "lattice_basis"}, ns);
        if (const ojson* w = find(*v, "s")) cfg.zeta.s = get_double(*w, "zeta.s", ns);
        if (const ojson* w = find(*v, "tol"))
            cfg.zeta.tol = get_double(*w, "zeta.tol", ns);
        if (const ojson* w = find(*v, "shell_cap"))
            cfg.zeta.shell_cap = get_long(*w, "zeta.shell_cap", ns);
        if (const ojson* w = find(*v, "norm_a"))
            cfg.zeta.norm_a = get_rat(*w, "zeta.norm_a", ns);
        if (const ojson* w = find(*v, "lattice_basis"))
            cfg.zeta.lattice_basis = get_rat_matrix(*w, "zeta.lattice_basis", ns);
    }

    if (const ojson* v = find(root, "slice")) {
        expect_object(*v, "slice", ns);
        reject_unknown(*v, "slice", {"plane", "clip"}, ns);
        if (const ojson* w = find(*v, "plane"))
            cfg.slice.plane = get_double(*w, "slice.plane", ns);
        if (const ojson* w = find(*v, "clip"))
            cfg.slice.clip = get_double(*w, "slice.clip", ns);
    }
    return cfg;
}

ojson config_to_json(const RunConfig& cfg) {
    ojson j;
    ojson field;
    ojson mp = ojson::array();
    for (const Int& c : cfg.min_poly) mp.push_back(bigint_json(c));
    field["min_poly"] = std::move(mp);
    field["tau1_im_sign"] = cfg.tau1_im_sign;
    j["field"] = std::move(field);
    j["units"] = rat_matrix_json(cfg.units);
    j["N"] = cfg.N;
    j["alphas"] = cfg.alphas ? rat_matrix_json(*cfg.alphas) : ojson(nullptr);
    j["alpha_search_bound"] = cfg.alpha_search_bound;
    j["precision_bits"] = cfg.precision_bits;
    j["seed"] = cfg.seed;
    j["verify"] = ojson{{"samples", cfg.verify.samples},
                        {"margin", cfg.verify.margin},
                        {"coeff_bound", cfg.verify.coeff_bound},
                        {"den_bound", cfg.verify.den_bound}};
    ojson zeta;
    zeta["s"] = cfg.zeta.s;
    zeta["tol"] = cfg.zeta.tol;
    zeta["shell_cap"] = cfg.zeta.shell_cap;
    zeta["norm_a"] = rat_to_string(cfg.zeta.norm_a);
    zeta["lattice_basis"] = rat_matrix_json(cfg.zeta.lattice_basis);
    j["zeta"] = std::move(zeta);
    j["slice"] = ojson{{"plane", cfg.slice.plane}, {"clip", cfg.slice.clip}};
    return j;
}

ojson parse_root(const std::string& text, const std::string& ns) {
    ojson root = ojson::parse(text, nullptr, false);
    if (root.is_discarded()) fail(ns + ".json", "input is not valid JSON");
    return root;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg = config_from_json(parse_root(text, "config"), "config");
    validate_config(cfg);
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    const std::size_t deg =
        cfg.min_poly.empty() ? 0 : cfg.min_poly.size() - 1;
    if (deg < 3 || deg > 10)
        fail("field.min_poly.degree",
             "minimal polynomial degree must be between 3 and 10");
    if (cfg.min_poly.back() != 1)
        fail("field.min_poly.monic", "minimal polynomial must be monic");
    if (cfg.tau1_im_sign != -1 && cfg.tau1_im_sign != 1)
        fail("field.tau1_im_sign", "tau1_im_sign must be -1 or +1");
    if (cfg.units.empty()) fail("units.empty", "at least one unit is required");
    for (const auto& u : cfg.units)
        if (u.empty() || u.size() > deg)
            fail("units.shape",
                 "unit coordinate vectors must have 1.." + std::to_string(deg) +
                     " entries");
    if (cfg.N < 1) fail("config.N", "N must be a positive integer");
    if (cfg.alphas) {
        if (cfg.alphas->size() != static_cast<std::size_t>(cfg.N))
            fail("alphas.count", "alphas must list exactly N elements");
        for (const auto& a : *cfg.alphas)
            if (a.empty() || a.size() > deg)
                fail("alphas.shape",
                     "alpha coordinate vectors must have 1.." +
                         std::to_string(deg) + " entries");
    }
    if (cfg.alpha_search_bound < 1)
        fail("config.alpha_search_bound", "alpha_search_bound must be positive");
    if (cfg.precision_bits < 32 || cfg.precision_bits > 65536)
        fail("config.precision_bits",
             "precision_bits must lie between 32 and 65536");
    if (cfg.verify.samples < 1)
        fail("verify.samples", "verify.samples must be positive");
    if (!(cfg.verify.margin > 0))
        fail("verify.margin", "verify.margin must be positive");
    if (cfg.verify.coeff_bound < 1 || cfg.verify.den_bound < 1)
        fail("verify.sampler", "sampler bounds must be positive");
    if (!(cfg.zeta.s > 1))
        fail("zeta.s", "s must be a finite real exceeding 1");
    if (!(cfg.zeta.tol > 0)) fail("zeta.tol", "zeta.tol must be positive");
    if (cfg.zeta.shell_cap < 3)
        fail("zeta.shell_cap", "zeta.shell_cap must be at least 3");
    if (sign_of(cfg.zeta.norm_a) <= 0)
        fail("zeta.norm_a", "zeta.norm_a must be positive");
    if (!cfg.zeta.lattice_basis.empty()) {
        if (cfg.zeta.lattice_basis.size() != deg)
            fail("zeta.lattice_basis",
                 "lattice_basis must list exactly degree-many vectors");
        for (const auto& b : cfg.zeta.lattice_basis)
            if (b.empty() || b.size() > deg)
                fail("zeta.lattice_basis",
                     "lattice basis vectors must have 1.." +
                         std::to_string(deg) + " entries");
    }
    if (!(cfg.slice.plane > 0))
        fail("slice.plane", "slice.plane must be positive");
    if (!(cfg.slice.clip >= 0) || !std::isfinite(cfg.slice.clip))
        fail("slice.clip", "slice.clip must be zero or a positive radius");
}

std::string emit_config(const RunConfig& cfg) {
    return config_to_json(cfg).dump(2) + "\n";
}

// ---- domain document ------------------------------------------------------

namespace {

ojson field_block_json(const NumberField& k) {
    ojson f;
    f["degree"] = k.degree();
    f["signature"] = ojson::array({k.unit_rank(), 1});
    f["discriminant"] = rat_to_string(k.discriminant());
    return f;
}

ojson cone_json(const SignedCone& c) {
    ojson o;
    o["label"] = mu_label(c.mu);
    o["sigma"] = c.mu.sigma;
    o["q"] = c.mu.q;
    o["n"] = c.mu.n;
    o["weight"] = c.weight;
    o["generators"] = elements_json(c.gens);
    if (c.weight != 0) {
        ojson flags = ojson::array();
        for (int b : c.closed) flags.push_back(b != 0);
        o["closed"] = std::move(flags);
    }
    return o;
}

}  // namespace

std::string emit_domain_document(const NumberField& k, const SignedDomain& dom,
                                 const RunConfig& cfg) {
    ojson j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["kind"] = "domain";
    j["metadata"] = ojson{{"tau1_convention", tau1_convention(k.tau1_im_sign())},
                          {"precision_bits", cfg.precision_bits}};
    j["config"] = config_to_json(cfg);
    j["field"] = field_block_json(k);
    j["N"] = dom.N;
    j["regulator_sign"] = dom.units.regulator_sign;
    j["units"] = elements_json(dom.units.eps);
    j["alphas"] = elements_json(dom.alphas.alpha);
    ojson cones = ojson::array();
    std::size_t active = 0;
    for (const SignedCone& c : dom.cones) {
        if (c.weight != 0) ++active;
        cones.push_back(cone_json(c));
    }
    j["cones"] = std::move(cones);
    j["active_cones"] = active;
    j["true_domain"] = is_true_domain(dom);
    return j.dump(2) + "\n";
}

namespace {

FieldElement element_from_json(const ojson& v, int degree,
                               const std::string& where, const std::string& ns) {
    std::vector<Rat> coords = get_rat_vector(v, where, ns);
    if (coords.empty() || coords.size() > static_cast<std::size_t>(degree))
        fail(ns + ".shape", where + " must have 1.." + std::to_string(degree) +
                                " coordinates");
    FieldElement e;
    e.c = std::move(coords);
    e.c.resize(static_cast<std::size_t>(degree), Rat(0));
    return e;
}

std::vector<FieldElement> elements_from_json(const ojson& v, int degree,
                                             const std::string& where,
                                             const std::string& ns) {
    if (!v.is_array()) fail(ns + ".type", where + " must be an array");
    std::vector<FieldElement> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(element_from_json(
            v[i], degree, where + "[" + std::to_string(i) + "]", ns));
    return out;
}

}  // namespace

ParsedDomainDocument parse_domain_document(const std::string& text) {
    const std::string ns = "document";
    ojson root = parse_root(text, ns);
    expect_object(root, "the document", ns);
    reject_unknown(root, "the document",
                   {"tool", "version", "kind", "metadata", "config", "field",
                    "N", "regulator_sign", "units", "alphas", "cones",
                    "active_cones", "true_domain"},
                   ns);
    const ojson* kind = find(root, "kind");
    if (!kind || !kind->is_string() || kind->get<std::string>() != "domain")
        fail(ns + ".kind", "expected a document with kind 'domain'");

    const ojson* cj = find(root, "config");
    if (!cj) fail(ns + ".missing", "document needs its config echo");
    ParsedDomainDocument doc{config_from_json(*cj, ns + ".config"), {}};
    validate_config(doc.config);
    const int degree = static_cast<int>(doc.config.min_poly.size()) - 1;
    const int r = degree - 2;

    const ojson* nj = find(root, "N");
    if (!nj || get_long(*nj, "N", ns) != doc.config.N)
        fail(ns + ".N", "document N disagrees with its config echo");
    doc.domain.N = doc.config.N;

    const ojson* rs = find(root, "regulator_sign");
    if (!rs) fail(ns + ".missing", "document needs regulator_sign");
    const long sign = get_long(*rs, "regulator_sign", ns);
    if (sign != 1 && sign != -1)
        fail(ns + ".regulator_sign", "regulator_sign must be -1 or +1");
    doc.domain.units.regulator_sign = static_cast<int>(sign);

    const ojson* uj = find(root, "units");
    if (!uj) fail(ns + ".missing", "document needs units");
    doc.domain.units.eps = elements_from_json(*uj, degree, "units", ns);
    if (doc.domain.units.eps.size() != static_cast<std::size_t>(r))
        fail(ns + ".units", "expected exactly " + std::to_string(r) + " units");

    const ojson* aj = find(root, "alphas");
    if (!aj) fail(ns + ".missing", "document needs alphas");
    doc.domain.alphas.N = doc.domain.N;
    doc.domain.alphas.alpha = elements_from_json(*aj, degree, "alphas", ns);
    if (doc.domain.alphas.alpha.size() !=
        static_cast<std::size_t>(doc.domain.N))
        fail(ns + ".alphas", "expected exactly N alphas");

    const ojson* cones = find(root, "cones");
    if (!cones || !cones->is_array())
        fail(ns + ".missing", "document needs a cones array");
    std::size_t expected = static_cast<std::size_t>(r + 1) *
                           static_cast<std::size_t>(doc.domain.N);
    for (int i = 2; i <= r; ++i) expected *= static_cast<std::size_t>(i);
    if (cones->size() != expected)
        fail(ns + ".cones.count",
             "expected " + std::to_string(expected) + " cone records");
    doc.domain.cones.reserve(cones->size());
    for (std::size_t i = 0; i < cones->size(); ++i) {
        const ojson& o = (*cones)[i];
        const std::string where = "cones[" + std::to_string(i) + "]";
        expect_object(o, where, ns);
        reject_unknown(
            o, where, {"label", "sigma", "q", "n", "weight", "generators",
                       "closed"},
            ns);
        SignedCone c;
        const ojson* sj = find(o, "sigma");
        if (!sj || !sj->is_array() || sj->size() != static_cast<std::size_t>(r))
            fail(ns + ".cones", where + ".sigma must list r entries");
        std::vector<char> seen(static_cast<std::size_t>(r), 0);
        for (const ojson& e : *sj) {
            const long v = get_long(e, where + ".sigma", ns);
            if (v < 1 || v > r || seen[static_cast<std::size_t>(v - 1)])
                fail(ns + ".cones", where + ".sigma is not a permutation");
            seen[static_cast<std::size_t>(v - 1)] = 1;
            c.mu.sigma.push_back(static_cast<int>(v));
        }
        const ojson* qj = find(o, "q");
        const ojson* nnj = find(o, "n");
        if (!qj || !nnj) fail(ns + ".missing", where + " needs q and n");
        c.mu.q = static_cast<int>(get_long(*qj, where + ".q", ns));
        c.mu.n = static_cast<int>(get_long(*nnj, where + ".n", ns));
        if (c.mu.q < 1 || c.mu.q > r + 1 || c.mu.n < 0 || c.mu.n >= doc.domain.N)
            fail(ns + ".cones", where + " has q or n out of range");
        const ojson* wj = find(o, "weight");
        if (!wj) fail(ns + ".missing", where + " needs a weight");
        const long w = get_long(*wj, where + ".weight", ns);
        if (w < -1 || w > 1)
            fail(ns + ".cones", where + ".weight must be -1, 0, or +1");
        c.weight = static_cast<int>(w);
        const ojson* gj = find(o, "generators");
        if (!gj) fail(ns + ".missing", where + " needs generators");
        c.gens = elements_from_json(*gj, degree, where + ".generators", ns);
        if (c.gens.size() != static_cast<std::size_t>(r + 2))
            fail(ns + ".cones", where + " must have r+2 generators");
        const ojson* fj = find(o, "closed");
        if (c.weight != 0) {
            if (!fj || !fj->is_array() ||
                fj->size() != static_cast<std::size_t>(r + 2))
                fail(ns + ".cones.closed",
                     where + " needs r+2 closure flags for nonzero weight");
            for (const ojson& b : *fj) {
                if (!b.is_boolean())
                    fail(ns + ".cones.closed",
                         where + ".closed must hold booleans");
                c.closed.push_back(b.get<bool>() ? 1 : 0);
            }
        } else if (fj) {
            fail(ns + ".cones.closed",
                 where + " carries closure flags despite zero weight");
        }
        doc.domain.cones.push_back(std::move(c));
    }
    return doc;
}

// ---- verify document ------------------------------------------------------

std::string emit_verify_document(const NumberField& k, const BatchSummary& batch,
                                 const RunConfig& cfg) {
    ojson j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["kind"] = "verify";
    j["metadata"] = ojson{{"tau1_convention", tau1_convention(k.tau1_im_sign())},
                          {"precision_bits", cfg.precision_bits},
                          {"rng", kRngIdentifier}};
    j["config"] = config_to_json(cfg);
    j["seed"] = batch.seed;
    j["margin"] = batch.margin;
    j["samples"] = batch.samples;
    j["passes"] = batch.passes;
    ojson failures = ojson::array();
    for (std::size_t i = 0; i < batch.results.size(); ++i)
        if (batch.results[i].signed_count != 1) failures.push_back(i);
    j["failures"] = std::move(failures);
    j["max_hits"] = batch.max_hits;
    ojson rows = ojson::array();
    for (const SampleResult& res : batch.results) {
        ojson row;
        row["point"] = rat_vector_json(res.point.c);
        row["signed_count"] = res.signed_count;
        row["candidates"] = res.candidates_tested;
        ojson hits = ojson::array();
        for (const ConeHit& h : res.hits)
            hits.push_back(ojson{{"cone", h.cone_index},
                                 {"exponents", h.exponents},
                                 {"weight", h.weight}});
        row["hits"] = std::move(hits);
        rows.push_back(std::move(row));
    }
    j["results"] = std::move(rows);
    return j.dump(2) + "\n";
}

// ---- zeta document --------------------------------------------------------

std::string emit_zeta_document(const NumberField& k, const ZetaOutcome& outcome,
                               const RunConfig& cfg) {
    ojson j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["kind"] = "zeta";
    // norm_product records which embeddings enter the per-term product:
    // the squared complex modulus and the r real embeddings, the version
    // consistent with ideal norms.
    j["metadata"] = ojson{{"tau1_convention", tau1_convention(k.tau1_im_sign())},
                          {"precision_bits", kZetaSeriesPrecision},
                          {"norm_product", "real-embeddings"}};
    j["config"] = config_to_json(cfg);
    j["s"] = cfg.zeta.s;
    j["tol"] = cfg.zeta.tol;
    j["shell_cap"] = cfg.zeta.shell_cap;
    j["norm_a"] = rat_to_string(cfg.zeta.norm_a);
    j["value"] = outcome.value;
    j["value_double"] = outcome.value_d;
    j["error_estimate"] = outcome.error_estimate;
    j["capped"] = outcome.capped;
    j["terms"] = outcome.terms;
    ojson rows = ojson::array();
    for (const ConeZetaBreakdown& c : outcome.cones) {
        ojson row;
        row["index"] = c.cone_index;
        row["weight"] = c.weight;
        row["residues"] = c.residue_count;
        row["shells"] = c.shells_used;
        row["capped"] = c.capped;
        row["sum"] = c.sum;
        row["sum_double"] = c.sum_d;
        row["tail"] = c.tail_estimate;
        rows.push_back(std::move(row));
    }
    j["cones"] = std::move(rows);
    return j.dump(2) + "\n";
}

// ---- slice ----------------------------------------------------------------

std::string emit_slice_tsv(const NumberField& k, const SignedDomain& dom,
                           double plane, double clip,
                           const PrecisionPolicy& policy) {
    if (k.unit_rank() != 1)
        throw ValidationError(
            "slice requires a field with exactly one real embedding (r = 1)");
    if (!(plane > 0)) throw ValidationError("slice plane must be positive");
    std::string out;
    out += "# ";
    out += kToolName;
    out += " slice: active cones cut by the plane tau_2 = " + fmt_double(plane) +
           "\n";
    out += "# vertex i is plane * tau_1(f_i) / tau_2(f_i); clip " +
           fmt_double(clip) + " (0 = none)\n";
    out += "label\tweight\tx1\ty1\tx2\ty2\tx3\ty3\n";
    for (const SignedCone& c : dom.cones) {
        if (c.weight == 0) continue;
        out += mu_label(c.mu) + "\t" + std::to_string(c.weight);
        for (const FieldElement& f : c.gens) {
            if (k.real_embedding_sign(f, 0, policy) <= 0)
                throw ValidationError(
                    "generator " + mu_label(c.mu) +
                    " has a nonpositive real embedding; slice undefined");
            const ComplexBall z = k.embed_complex(f, policy.start_bits);
            const RealBall den = k.embed_real(f, 0, policy.start_bits);
            double vx = plane * z.re.mid_d() / den.mid_d();
            double vy = plane * z.im.mid_d() / den.mid_d();
            if (clip > 0) {
                const double radius = std::hypot(vx, vy);
                if (radius > clip) {
                    vx *= clip / radius;
                    vy *= clip / radius;
                }
            }
            out += "\t" + fmt_double(vx) + "\t" + fmt_double(vy);
        }
        out += "\n";
    }
    return out;
}

std::string emit_error_document(const std::string& code,
                                const std::string& message) {
    ojson j;
    j["error"] = ojson{{"code", code}, {"message", message}};
    return j.dump(2) + "\n";
}

}  // namespace shintani
