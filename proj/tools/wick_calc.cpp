// wick-calc: exact symbolic calculator for tensor, free, boolean and
// conditionally free Wick polynomials, cumulant tables, coproducts and the
// identity verification suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ncwick/fault.hpp"
#include "ncwick/json_io.hpp"
#include "ncwick/parse.hpp"
#include "ncwick/print.hpp"
#include "ncwick/state_io.hpp"
#include "ncwick/verify.hpp"
#include "ncwick/wick.hpp"

namespace {

using namespace ncwick;

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitUsage = 2;

struct Session {
    GeneratorSet gens;
    bool gens_fixed = false;  // true when a state file declared them
    Mode mode = Mode::noncommutative;
    int max_degree = 6;
    OutputFormat format = OutputFormat::text;
    std::optional<State> phi;
    std::optional<State> psi;

    State require_phi() {
        if (!phi) phi = State::symbolic(StateTag::phi, mode);
        return *phi;
    }
    State require_psi() {
        if (!psi) throw std::runtime_error("second state required: define psi in the state file");
        return *psi;
    }
};

void load_state_file(Session& session, const std::string& path, bool force_commutative) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    if (force_commutative) doc["mode"] = "commutative";
    LoadedStates loaded = state_io::load_states(doc);
    session.gens = loaded.gens;
    session.gens_fixed = true;
    session.mode = loaded.mode;
    session.phi = loaded.phi;
    session.psi = loaded.psi;
}

Element parse_input(Session& session, const std::string& src) {
    Element x = parse_expression(src, session.gens, session.gens_fixed);
    if (static_cast<int>(x.degree()) > session.max_degree)
        throw ParseError("expression degree " + std::to_string(x.degree()) +
                             " exceeds the session cap " +
                             std::to_string(session.max_degree),
                         0);
    return x;
}

void print_element(const Session& session, const Element& x) {
    switch (session.format) {
        case OutputFormat::text:
            std::cout << print::element_text(x, session.gens) << "\n";
            break;
        case OutputFormat::latex:
            std::cout << print::element_latex(x, session.gens) << "\n";
            break;
        case OutputFormat::json:
            std::cout << json_io::element_to_json(x, session.gens).dump() << "\n";
            break;
    }
}

void print_scalar_entry(const Session& session, const std::string& label, const Word& w,
                        const Scalar& v) {
    switch (session.format) {
        case OutputFormat::text:
            std::cout << label << "[" << print::word_text(w, session.gens)
                      << "] = " << print::scalar_text(v, session.gens) << "\n";
            break;
        case OutputFormat::latex:
            std::cout << "\\" << label << "(" << print::barword_latex(BarWord(w), session.gens)
                      << ") = "
                      << print::element_latex(Element::term(BarWord{}, v), session.gens)
                      << "\n";
            break;
        case OutputFormat::json: {
            nlohmann::json rec;
            rec["cumulant"] = label;
            nlohmann::json letters = nlohmann::json::array();
            for (const auto& l : w.letters)
                letters.push_back(print::letter_text(l, session.gens));
            rec["word"] = std::move(letters);
            rec["value"] =
                json_io::element_to_json(Element::term(BarWord{}, v), session.gens)["terms"];
            std::cout << rec.dump() << "\n";
            break;
        }
    }
}

Word single_word(const Element& x) {
    if (x.terms().size() != 1) throw std::runtime_error("expected a single word");
    const auto& [b, c] = *x.terms().begin();
    if (!(c == Scalar::one())) throw std::runtime_error("expected a single word");
    return as_word(b);
}

Endo make_wick_map(Session& session, const std::string& kind) {
    if (kind == "tensor") return wick_tensor(word_moment_functional(session.require_phi()));
    Functional Phi = extend_state(session.require_phi());
    if (kind == "free") return wick_free_of(Phi);
    if (kind == "boolean") return wick_boolean_of(Phi);
    if (kind == "cfree") return wick_cfree(Phi, extend_state(session.require_psi()));
    throw std::runtime_error("unknown Wick map '" + kind + "'");
}

int run_verify(const std::string& suite, int max_degree, std::uint64_t seed) {
    verify::Options opts;
    opts.max_degree = max_degree;
    opts.seed = seed;
    std::vector<verify::CheckResult> all;
    if (suite.empty()) {
        for (const auto& [name, fn] : verify::suites()) {
            auto rs = fn(opts);
            all.insert(all.end(), rs.begin(), rs.end());
        }
    } else {
        all = verify::run_suite(suite, opts);
    }
    long failures = 0;
    for (const auto& r : all) {
        std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.suite << ": " << r.name << " ("
                  << r.inputs << " inputs)\n";
        if (!r.pass) {
            ++failures;
            std::cout << "       " << r.detail << "\n";
        }
    }
    std::cout << "verify: " << all.size() << " checks, " << failures
              << " failed (seed " << seed << ", max degree " << max_degree << ")\n";
    return failures == 0 ? kExitOk : kExitIdentityFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Wick calculus on the double tensor algebra"};
    app.require_subcommand(1);
    app.fallthrough();

    Session session;
    std::string state_path, format = "text";
    app.add_option("--state", state_path, "JSON state file (generators, phi, psi)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "latex", "json"}));
    app.add_option("--degree", session.max_degree, "maximum working degree")
        ->check(CLI::PositiveNumber);
    bool commutative = false;
    app.add_flag("--commutative", commutative, "treat the base algebra as commutative");
    std::string mutate;
    app.add_option("--mutate", mutate, "inject a named fault (self-test aid)")
        ->group("");  // hidden

    std::string wick_kind, expr;
    auto* wick_cmd = app.add_subcommand("wick", "apply a Wick map to an expression");
    wick_cmd->add_option("kind", wick_kind, "tensor|free|boolean|cfree")
        ->required()
        ->check(CLI::IsMember({"tensor", "free", "boolean", "cfree"}));
    wick_cmd->add_option("expr", expr, "expression")->required();

    std::string cum_kind, cum_word;
    int cum_up_to = 0;
    auto* cum_cmd = app.add_subcommand("cumulants", "print a cumulant table");
    cum_cmd->add_option("kind", cum_kind, "free|boolean|monotone|tensor|cfree")
        ->required()
        ->check(CLI::IsMember({"free", "boolean", "monotone", "tensor", "cfree"}));
    cum_cmd->add_option("--word", cum_word, "a single word to evaluate");
    cum_cmd->add_option("--up-to", cum_up_to, "tabulate all words up to this degree");

    std::string prod_kind, prod_left, prod_right;
    auto* prod_cmd = app.add_subcommand("product", "Wick product of two expressions");
    prod_cmd->add_option("kind", prod_kind, "free|boolean|cfree")
        ->required()
        ->check(CLI::IsMember({"free", "boolean", "cfree"}));
    prod_cmd->add_option("left", prod_left, "left factor")->required();
    prod_cmd->add_option("right", prod_right, "right factor")->required();

    std::string cop_kind, cop_expr;
    auto* cop_cmd = app.add_subcommand("coproduct", "expand a coproduct");
    cop_cmd->add_option("kind", cop_kind, "delta|shuffle|prec|succ")
        ->required()
        ->check(CLI::IsMember({"delta", "shuffle", "prec", "succ"}));
    cop_cmd->add_option("expr", cop_expr, "expression")->required();

    std::string verify_suite;
    int verify_degree = 6;
    std::uint64_t verify_seed = 7;
    auto* verify_cmd = app.add_subcommand("verify", "run the identity suites");
    verify_cmd->add_option("--suite", verify_suite, "run a single named suite");
    verify_cmd->add_option("--max-degree", verify_degree, "degree bound for the suites")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_seed, "seed for the randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (!mutate.empty()) {
        fault::set(mutate);
        std::cout << "fault injected: " << mutate << "\n";
    }
    if (format == "latex") session.format = OutputFormat::latex;
    else if (format == "json") session.format = OutputFormat::json;

    try {
        if (!state_path.empty()) load_state_file(session, state_path, commutative);
        else if (commutative) session.mode = Mode::commutative;

        if (*verify_cmd) return run_verify(verify_suite, verify_degree, verify_seed);

        if (*wick_cmd) {
            Element input = parse_input(session, expr);
            Endo map = make_wick_map(session, wick_kind);
            print_element(session, apply_linear(map, input));
            return kExitOk;
        }

        if (*cum_cmd) {
            State phi_state = session.require_phi();
            Functional Phi = extend_state(phi_state);
            std::function<Scalar(const Word&)> table;
            std::string label;
            if (cum_kind == "free") {
                Functional kappa = L_prec(Phi);
                table = [kappa](const Word& w) { return kappa(w); };
                label = "kappa";
            } else if (cum_kind == "boolean") {
                Functional beta = L_succ(Phi);
                table = [beta](const Word& w) { return beta(w); };
                label = "beta";
            } else if (cum_kind == "monotone") {
                Functional rho = log_star(Phi);
                table = [rho](const Word& w) { return rho(w); };
                label = "rho";
            } else if (cum_kind == "tensor") {
                WordFunctional c = log_shuffle(word_moment_functional(phi_state));
                table = [c](const Word& w) { return c(w); };
                label = "c";
            } else {
                Functional R = cfree_cumulants(Phi, extend_state(session.require_psi()));
                table = [R](const Word& w) { return R(w); };
                label = "R";
            }
            if (!cum_word.empty()) {
                Word w = single_word(parse_input(session, cum_word));
                print_scalar_entry(session, label, w, table(w));
            } else {
                int up_to = cum_up_to > 0 ? cum_up_to : std::min(session.max_degree, 3);
                if (up_to > session.max_degree)
                    throw std::runtime_error("degree exceeds the session cap");
                if (session.gens.size() == 0) session.gens.add_or_get("a");
                for (const auto& w :
                     words_over(static_cast<int>(session.gens.size()), up_to))
                    print_scalar_entry(session, label, w, table(w));
            }
            return kExitOk;
        }

        if (*prod_cmd) {
            Element left = parse_input(session, prod_left);
            Element right = parse_input(session, prod_right);
            Endo map = make_wick_map(session, prod_kind);
            print_element(session, wick_product(map, left, right));
            return kExitOk;
        }

        if (*cop_cmd) {
            Element input = parse_input(session, cop_expr);
            TensorPair total;
            for (const auto& [b, c] : input.terms()) {
                TensorPair part;
                if (cop_kind == "delta") part = delta(b);
                else if (cop_kind == "shuffle") part = delta_shuffle(b);
                else if (cop_kind == "prec") part = delta_prec_plus(b);
                else part = delta_succ_plus(b);
                total += c * part;
            }
            if (session.format == OutputFormat::json) {
                nlohmann::json terms = nlohmann::json::array();
                for (const auto& [legs, c] : total.terms()) {
                    Element coeff = Element::term(BarWord{}, c);
                    for (const auto& t : print::flatten_terms(coeff)) {
                        nlohmann::json rec;
                        rec["left"] = json_io::barword_to_json(legs.first, session.gens);
                        rec["right"] = json_io::barword_to_json(legs.second, session.gens);
                        nlohmann::json cj;
                        nlohmann::json mono = nlohmann::json::array();
                        for (const auto& sym : t.monomial.symbols) {
                            std::string key;
                            for (std::size_t i = 0; i < sym.key.size(); ++i) {
                                if (i) key += '.';
                                key += session.gens.name(sym.key[i]);
                            }
                            mono.push_back(nlohmann::json::array(
                                {sym.tag == StateTag::phi ? "phi" : "psi", key}));
                        }
                        cj["monomial"] = std::move(mono);
                        cj["rat"] = t.coeff.str();
                        rec["coeff"] = std::move(cj);
                        terms.push_back(std::move(rec));
                    }
                }
                std::cout << nlohmann::json{{"terms", std::move(terms)}}.dump() << "\n";
            } else {
                std::cout << print::tensor_pair_text(total, session.gens) << "\n";
            }
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
