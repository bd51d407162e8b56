// Command-line driver. Four subcommands share one pipeline: parse a JSON
// config (or load a previously emitted domain document), build the signed
// cone decomposition, and hand it to the requested computation. Standard
// output carries exactly one document per run; diagnostics and wall-clock
// stats go to standard error so that reruns with the same config and seed
// are byte-identical on stdout.
//
// Exit codes: 0 success, 2 validation/config rejection, 3 precision or
// order certification failure, 4 coverage verification found a counter-
// example, 5 zeta shell cap reached before the tolerance.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "shintani/cover.hpp"
#include "shintani/domain.hpp"
#include "shintani/errors.hpp"
#include "shintani/io.hpp"
#include "shintani/number_field.hpp"
#include "shintani/precision.hpp"
#include "shintani/rational.hpp"
#include "shintani/zeta.hpp"

namespace {

using namespace shintani;

struct Flags {
    std::string config_path;
    std::string domain_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> precision_bits;
    std::optional<std::uint64_t> samples;
    std::optional<double> s;
    std::optional<double> tol;
    std::optional<double> clip;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cli.read", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& doc) {
    if (out_path.empty()) {
        std::fwrite(doc.data(), 1, doc.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cli.write", "cannot write '" + out_path + "'");
    out << doc;
}

void apply_overrides(RunConfig& cfg, const Flags& fl) {
    if (fl.seed) cfg.seed = *fl.seed;
    if (fl.precision_bits) cfg.precision_bits = *fl.precision_bits;
    if (fl.samples) cfg.verify.samples = *fl.samples;
    if (fl.s) cfg.zeta.s = *fl.s;
    if (fl.tol) cfg.zeta.tol = *fl.tol;
    if (fl.clip) cfg.slice.clip = *fl.clip;
    validate_config(cfg);
}

PrecisionPolicy policy_for(const RunConfig& cfg) {
    PrecisionPolicy pol;
    pol.start_bits = cfg.precision_bits;
    pol.cap_bits = std::max<long>(cfg.precision_bits, pol.cap_bits);
    return pol;
}

std::vector<FieldElement> elements_of(const NumberField& k,
                                      const std::vector<std::vector<Rat>>& rows) {
    std::vector<FieldElement> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        FieldElement e;
        e.c = row;
        e.c.resize(static_cast<std::size_t>(k.degree()), Rat(0));
        out.push_back(std::move(e));
    }
    return out;
}

// Builds the domain and writes the resolved alpha table back into the
// config so the emitted echo pins the exact table used.
SignedDomain build_domain(const NumberField& k, RunConfig& cfg) {
    const PrecisionPolicy pol = policy_for(cfg);
    UnitSystem units = make_unit_system(k, elements_of(k, cfg.units), pol);
    AlphaTable alphas =
        cfg.alphas
            ? make_alpha_table(k, cfg.N, elements_of(k, *cfg.alphas), pol)
            : auto_select_alphas(k, cfg.N, cfg.alpha_search_bound, pol);
    SignedDomain dom = build_signed_domain(k, units, alphas, pol);
    std::vector<std::vector<Rat>> coords;
    coords.reserve(dom.alphas.alpha.size());
    for (const FieldElement& a : dom.alphas.alpha) coords.push_back(a.c);
    cfg.alphas = std::move(coords);
    return dom;
}

RunConfig load_config(const Flags& fl) {
    RunConfig cfg = parse_config(read_file(fl.config_path));
    apply_overrides(cfg, fl);
    return cfg;
}

int run_domain(const Flags& fl) {
    RunConfig cfg = load_config(fl);
    NumberField k(cfg.min_poly, cfg.tau1_im_sign);
    SignedDomain dom = build_domain(k, cfg);
    write_output(fl.out_path, emit_domain_document(k, dom, cfg));
    return 0;
}

int verify_with(const NumberField& k, const SignedDomain& dom, RunConfig cfg,
                const Flags& fl) {
    const PrecisionPolicy pol = policy_for(cfg);
    BatchSummary batch = check_coverage_batch(
        k, dom, cfg.verify.samples, cfg.seed, cfg.verify.margin, pol,
        cfg.verify.coeff_bound, cfg.verify.den_bound);
    write_output(fl.out_path, emit_verify_document(k, batch, cfg));
    if (batch.passes != batch.samples) {
        std::fprintf(stderr, "verify: %zu of %zu samples failed\n",
                     batch.samples - batch.passes, batch.samples);
        return 4;
    }
    return 0;
}

int run_verify(const Flags& fl) {
    if (!fl.domain_path.empty()) {
        ParsedDomainDocument doc = parse_domain_document(read_file(fl.domain_path));
        apply_overrides(doc.config, fl);
        NumberField k(doc.config.min_poly, doc.config.tau1_im_sign);
        return verify_with(k, doc.domain, doc.config, fl);
    }
    if (fl.config_path.empty())
        throw ConfigError("cli.input", "verify needs --config or --domain");
    RunConfig cfg = load_config(fl);
    NumberField k(cfg.min_poly, cfg.tau1_im_sign);
    SignedDomain dom = build_domain(k, cfg);
    return verify_with(k, dom, cfg, fl);
}

int run_zeta(const Flags& fl) {
    RunConfig cfg = load_config(fl);
    NumberField k(cfg.min_poly, cfg.tau1_im_sign);
    SignedDomain dom = build_domain(k, cfg);
    IdealLattice lattice;
    if (cfg.zeta.lattice_basis.empty()) {
        for (int i = 0; i < k.degree(); ++i) {
            FieldElement e = k.zero();
            e.c[static_cast<std::size_t>(i)] = 1;
            lattice.basis.push_back(std::move(e));
        }
    } else {
        lattice.basis = elements_of(k, cfg.zeta.lattice_basis);
    }
    lattice.norm_a = cfg.zeta.norm_a;
    ZetaOutcome outcome =
        partial_zeta(k, dom, lattice, cfg.zeta.s, cfg.zeta.tol, cfg.zeta.shell_cap);
    write_output(fl.out_path, emit_zeta_document(k, outcome, cfg));
    if (outcome.capped) {
        std::fprintf(stderr, "zeta: shell cap %ld reached before tolerance\n",
                     cfg.zeta.shell_cap);
        return 5;
    }
    return 0;
}

int run_slice(const Flags& fl) {
    if (!fl.domain_path.empty()) {
        ParsedDomainDocument doc = parse_domain_document(read_file(fl.domain_path));
        apply_overrides(doc.config, fl);
        NumberField k(doc.config.min_poly, doc.config.tau1_im_sign);
        write_output(fl.out_path,
                     emit_slice_tsv(k, doc.domain, doc.config.slice.plane,
                                    doc.config.slice.clip, policy_for(doc.config)));
        return 0;
    }
    if (fl.config_path.empty())
        throw ConfigError("cli.input", "slice needs --config or --domain");
    RunConfig cfg = load_config(fl);
    NumberField k(cfg.min_poly, cfg.tau1_im_sign);
    SignedDomain dom = build_domain(k, cfg);
    write_output(fl.out_path, emit_slice_tsv(k, dom, cfg.slice.plane,
                                             cfg.slice.clip, policy_for(cfg)));
    return 0;
}

int emit_failure(const std::string& code, const std::string& message, int rc) {
    std::fputs(emit_error_document(code, message).c_str(), stdout);
    std::fflush(stdout);
    std::fprintf(stderr, "error [%s]: %s\n", code.c_str(), message.c_str());
    return rc;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        return emit_failure(e.code(), e.what(), 2);
    } catch (const NotIrreducible& e) {
        return emit_failure("field.min_poly.irreducible", e.what(), 2);
    } catch (const WrongSignature& e) {
        return emit_failure("field.signature", e.what(), 2);
    } catch (const SearchExhausted& e) {
        return emit_failure("alpha.search_exhausted", e.what(), 2);
    } catch (const SamplerStarved& e) {
        return emit_failure("verify.sampler_starved", e.what(), 2);
    } catch (const PrecisionExhausted& e) {
        return emit_failure("precision.exhausted", e.what(), 3);
    } catch (const OrderViolation& e) {
        return emit_failure("order.violation", e.what(), 3);
    } catch (const ZeroCoefficient& e) {
        return emit_failure("closure.zero_coefficient", e.what(), 3);
    } catch (const BallIndeterminate& e) {
        return emit_failure("precision.indeterminate", e.what(), 3);
    } catch (const ValidationError& e) {
        return emit_failure("validation", e.what(), 2);
    } catch (const std::exception& e) {
        return emit_failure("internal", e.what(), 1);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signed fundamental domains of Shintani cones and partial "
                 "zeta values for number fields with one complex place"};
    app.require_subcommand(1);
    Flags fl;

    CLI::App* domain =
        app.add_subcommand("domain", "construct the signed cone decomposition");
    domain->add_option("--config", fl.config_path, "JSON config path")
        ->required();
    domain->add_option("--out", fl.out_path, "write the document to this file");
    domain->add_option("--precision-bits", fl.precision_bits,
                       "starting ball precision override");
    domain->add_option("--seed", fl.seed, "seed echoed into the config");

    CLI::App* verify = app.add_subcommand(
        "verify", "sample points and check the signed cover counts once each");
    auto* vc = verify->add_option("--config", fl.config_path, "JSON config path");
    auto* vd = verify->add_option("--domain", fl.domain_path,
                                  "previously emitted domain document");
    vc->excludes(vd);
    verify->add_option("--out", fl.out_path, "write the document to this file");
    verify->add_option("--samples", fl.samples, "sample count override");
    verify->add_option("--seed", fl.seed, "RNG seed override");
    verify->add_option("--precision-bits", fl.precision_bits,
                       "starting ball precision override");

    CLI::App* zeta = app.add_subcommand(
        "zeta", "evaluate the partial zeta value over the signed domain");
    zeta->add_option("--config", fl.config_path, "JSON config path")->required();
    zeta->add_option("--out", fl.out_path, "write the document to this file");
    zeta->add_option("--s", fl.s, "evaluation point override (s > 1)");
    zeta->add_option("--tol", fl.tol, "relative tolerance override");
    zeta->add_option("--seed", fl.seed, "seed echoed into the config");
    zeta->add_option("--precision-bits", fl.precision_bits,
                     "starting ball precision override");

    CLI::App* slice = app.add_subcommand(
        "slice", "cross-section of the active cones by a horizontal plane");
    auto* sc = slice->add_option("--config", fl.config_path, "JSON config path");
    auto* sd = slice->add_option("--domain", fl.domain_path,
                                 "previously emitted domain document");
    sc->excludes(sd);
    slice->add_option("--out", fl.out_path, "write the table to this file");
    slice->add_option("--clip", fl.clip, "vertex radius cap (0 disables)");
    slice->add_option("--precision-bits", fl.precision_bits,
                      "starting ball precision override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return emit_failure("cli.usage", e.what(), 2);
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    const char* name = "";
    if (domain->parsed()) {
        name = "domain";
        rc = guarded([&] { return run_domain(fl); });
    } else if (verify->parsed()) {
        name = "verify";
        rc = guarded([&] { return run_verify(fl); });
    } else if (zeta->parsed()) {
        name = "zeta";
        rc = guarded([&] { return run_zeta(fl); });
    } else if (slice->parsed()) {
        name = "slice";
        rc = guarded([&] { return run_slice(fl); });
    }
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    std::fprintf(stderr, "%s: elapsed %.3f s\n", name, dt.count());
    return rc;
}
