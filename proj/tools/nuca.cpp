#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "nuca/conjugacy.hpp"
#include "nuca/debruijn.hpp"
#include "nuca/dynamics.hpp"
#include "nuca/engine.hpp"
#include "nuca/errors.hpp"
#include "nuca/io.hpp"
#include "nuca/rules.hpp"
#include "nuca/zoo.hpp"

using namespace nuca;

namespace {

std::int64_t env_budget(std::int64_t fallback) {
    const char* s = std::getenv("NUCA_BUDGET");
    if (!s || !*s) return fallback;
    try {
        const long long v = std::stoll(s);
        if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw InputError("NUCA_BUDGET must be a positive integer");
}

// Decision procedures need radius >= 1 and period-1 tails; everything else is
// routed through the block-packing conjugacy, which preserves both verdicts.
struct DecidableView {
    NuCaSpec spec;
    std::optional<PackedAlphabetMap> map;  // set when packed
};

DecidableView decidable_view(const NuCaSpec& spec) {
    NuCaSpec s = canonical_spec(spec);
    if (s.radius == 0) {
        const auto lift = [&](LocalRule& f) { f = pad_radius(f, 1); };
        for (LocalRule& f : s.window) lift(f);
        for (LocalRule& f : s.leftTail) lift(f);
        for (LocalRule& f : s.rightTail) lift(f);
        s.radius = 1;
        check_spec(s);
    }
    if (s.leftTail.size() == 1 && s.rightTail.size() == 1) return {std::move(s), std::nullopt};
    PackedSpec p = pack_spec(s);
    return {std::move(p.spec), std::move(p.map)};
}

LocalRule shared_default(const NuCaSpec& spec) {
    const NuCaSpec c = canonical_spec(spec);
    if (c.leftTail.size() == 1 && c.rightTail.size() == 1 && c.leftTail[0] == c.rightTail[0])
        return c.leftTail[0];
    throw InputError("this command needs tails sharing one default rule");
}

std::pair<std::int64_t, std::int64_t> parse_window_range(const std::string& text) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos) throw InputError("window must look like a..b");
    try {
        const std::int64_t a = std::stoll(text.substr(0, dots));
        const std::int64_t b = std::stoll(text.substr(dots + 2));
        if (b < a) throw InputError("window must satisfy a <= b");
        return {a, b};
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("window must look like a..b");
    }
}

// default view: the center plus the light cone grown over the run
std::pair<std::int64_t, std::int64_t> default_window(const NuCaSpec& spec, const EpConfig& x,
                                                     int steps) {
    const std::int64_t grow = static_cast<std::int64_t>(spec.radius) * steps + 2;
    const std::int64_t lo = x.offset - grow;
    const std::int64_t hi = x.offset + static_cast<std::int64_t>(x.center.size()) - 1 + grow;
    return {lo, hi};
}

Word unpack_word(const PackedAlphabetMap& map, const Word& packed) {
    Word out;
    for (std::size_t i = 0; i < packed.size(); ++i) {
        const Word block = map.decode(packed[i]);
        for (std::size_t j = 0; j < block.size(); ++j) out.push_back(block[j]);
    }
    return out;
}

struct SpecArg {
    std::string path;

    NuCaSpec get() const { return load_spec(path); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for eventually periodic cell-dependent automata"};
    app.require_subcommand(1);

    // simulate ---------------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "print a space-time trace");
    SpecArg simSpec;
    std::string simConfig, simWindow;
    int simSteps = 0;
    simulate->add_option("--spec", simSpec.path, "spec JSON file")->required();
    simulate->add_option("--config", simConfig, "configuration literal l*|c@o|r*")->required();
    simulate->add_option("--steps", simSteps, "number of steps")->required()
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--window", simWindow, "cell range a..b (default: light cone)");

    // render ------------------------------------------------------------------
    auto* render = app.add_subcommand("render", "write a space-time PGM image");
    SpecArg renSpec;
    std::string renConfig, renWindow, renOut = "trace.pgm";
    int renSteps = 0;
    render->add_option("--spec", renSpec.path, "spec JSON file")->required();
    render->add_option("--config", renConfig, "configuration literal l*|c@o|r*")->required();
    render->add_option("--steps", renSteps, "number of steps")->required()
        ->check(CLI::NonNegativeNumber);
    render->add_option("--window", renWindow, "cell range a..b (default: light cone)");
    render->add_option("--out", renOut, "output PGM path");

    // decide ------------------------------------------------------------------
    auto* decide = app.add_subcommand("decide", "exact surjectivity/injectivity verdicts");
    std::string decideWhat;
    SpecArg decSpec;
    std::int64_t decBudget = 0;
    decide->add_option("what", decideWhat, "surjective or injective")->required()
        ->check(CLI::IsMember({"surjective", "injective"}));
    decide->add_option("--spec", decSpec.path, "spec JSON file")->required();
    decide->add_option("--budget", decBudget, "state budget override");

    // blocking ----------------------------------------------------------------
    auto* blocking = app.add_subcommand("blocking", "blocking-word toolchain");
    blocking->require_subcommand(1);
    SpecArg blkSpec;
    std::string blkWord;
    std::int64_t blkWidth = 1, blkMaxLen = 4, blkHorizon = 30, blkPadding = 6, blkBudget = 0;
    bool blkJson = false;
    auto* certify = blocking->add_subcommand("certify", "certify a word against all"
                                                        " boundary behaviors");
    certify->add_option("--spec", blkSpec.path, "spec JSON file")->required();
    certify->add_option("--word", blkWord, "candidate word")->required();
    certify->add_option("--width", blkWidth, "column width");
    certify->add_option("--budget", blkBudget, "reachable-set budget override");
    certify->add_flag("--json", blkJson, "print the certificate as JSON");
    auto* refute = blocking->add_subcommand("refute", "search for a splitting context pair");
    refute->add_option("--spec", blkSpec.path, "spec JSON file")->required();
    refute->add_option("--word", blkWord, "candidate word")->required();
    refute->add_option("--width", blkWidth, "column width");
    refute->add_option("--horizon", blkHorizon, "time horizon");
    refute->add_option("--padding", blkPadding, "context cells per side");
    refute->add_flag("--json", blkJson, "print the refutation as JSON");
    auto* find = blocking->add_subcommand("find", "search all words up to a length");
    find->add_option("--spec", blkSpec.path, "spec JSON file")->required();
    find->add_option("--width", blkWidth, "column width");
    find->add_option("--max-len", blkMaxLen, "longest word length to try");
    find->add_option("--budget", blkBudget, "reachable-set budget override");
    find->add_flag("--json", blkJson, "print the certificate as JSON");

    // classify ----------------------------------------------------------------
    auto* classify = app.add_subcommand("classify", "equicontinuity classification");
    SpecArg clsSpec;
    ClassifyBounds clsBounds;
    bool clsDetect = false;
    std::int64_t clsSamples = 25;
    std::uint64_t clsSeed = 1;
    classify->add_option("--spec", clsSpec.path, "spec JSON file")->required();
    classify->add_option("--max-word-len", clsBounds.maxWordLen, "blocking-word scan cap");
    classify->add_option("--max-q", clsBounds.maxQ, "preperiod search cap");
    classify->add_option("--max-p", clsBounds.maxP, "period search cap");
    classify->add_option("--horizon", clsBounds.horizon, "refutation horizon");
    classify->add_flag("--detect-periodicity", clsDetect,
                       "sample orbits for global ultimate periodicity");
    classify->add_option("--samples", clsSamples, "orbit samples for --detect-periodicity");
    classify->add_option("--seed", clsSeed, "sampling seed");

    // compat ------------------------------------------------------------------
    auto* compat = app.add_subcommand("compat", "longest-run compatibility with a rule");
    SpecArg cmpSpec;
    std::string cmpRule;
    std::int64_t cmpN = 0;
    compat->add_option("--spec", cmpSpec.path, "spec JSON file")->required();
    compat->add_option("--rule", cmpRule, "rule table literal (length q^(2r+1))")->required();
    compat->add_option("--n", cmpN, "required run length")->required()
        ->check(CLI::NonNegativeNumber);

    // zoo ---------------------------------------------------------------------
    auto* zooCmd = app.add_subcommand("zoo", "catalog of reference systems");
    zooCmd->require_subcommand(1);
    auto* zooList = zooCmd->add_subcommand("list", "list catalog entries");
    (void)zooList;
    auto* zooVerify = zooCmd->add_subcommand("verify", "run an entry's recorded checks");
    std::string zooName;
    zooVerify->add_option("name", zooName, "entry name")->required();
    auto* zooRender = zooCmd->add_subcommand("render", "render an entry to PGM");
    std::string zooRenderName, zooOut, zooConfig;
    int zooSteps = 199;
    std::int64_t zooHalf = 100;
    std::uint64_t zooSeed = 0;
    bool zooSeeded = false;
    zooRender->add_option("name", zooRenderName, "entry name")->required();
    zooRender->add_option("--out", zooOut, "output PGM path (default <name>.pgm)");
    zooRender->add_option("--config", zooConfig, "start configuration literal");
    zooRender->add_option("--steps", zooSteps, "rows - 1")->check(CLI::NonNegativeNumber);
    zooRender->add_option("--half-width", zooHalf, "columns span [-h, h-1]");
    zooRender->add_option("--seed", zooSeed, "random 64-cell start center")
        ->each([&](const std::string&) { zooSeeded = true; });

    // oracle ------------------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
    std::string oracleWhat;
    SpecArg oraSpec;
    std::int64_t oraBound = 4, oraBudget = 0;
    oracle->add_option("what", oracleWhat, "surjective or injective")->required()
        ->check(CLI::IsMember({"surjective", "injective"}));
    oracle->add_option("--spec", oraSpec.path, "spec JSON file")->required();
    oracle->add_option("--bound", oraBound, "half-width bound (surjective)");
    oracle->add_option("--budget", oraBudget, "enumeration/state budget override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed() || render->parsed()) {
            const bool draw = render->parsed();
            const NuCaSpec spec = (draw ? renSpec : simSpec).get();
            const EpConfig x = parse_config(draw ? renConfig : simConfig, spec.alphabet);
            const int steps = draw ? renSteps : simSteps;
            const std::string windowText = draw ? renWindow : simWindow;
            auto [a, b] = windowText.empty() ? default_window(spec, x, steps)
                                             : parse_window_range(windowText);
            const Trace tr = trace(spec, x, a, b, steps);
            if (draw) {
                write_pgm(renOut, tr, spec.alphabet);
                std::cout << renOut << ": " << (b - a + 1) << "x" << tr.rows.size() << "\n";
            } else {
                std::cout << format_trace(tr, spec.alphabet);
            }
        } else if (decide->parsed()) {
            const NuCaSpec spec = decSpec.get();
            const DecidableView view = decidable_view(spec);
            const std::int64_t budget = decBudget > 0 ? decBudget : env_budget(1 << 20);
            if (decideWhat == "surjective") {
                SurjectivityVerdict v = decide_surjective(view.spec, budget);
                if (view.map && v.kind == SurjectivityVerdict::Kind::NotSurjective) {
                    v.witnessWord = unpack_word(*view.map, v.witnessWord);
                    v.position *= view.map->b;
                }
                std::cout << format_surjective_verdict(v, spec.alphabet) << "\n";
            } else {
                InjectivityVerdict v = decide_injective(view.spec, budget);
                if (view.map && v.kind == InjectivityVerdict::Kind::NotInjective) {
                    v.witnessA = unpack_config(*view.map, v.witnessA);
                    v.witnessB = unpack_config(*view.map, v.witnessB);
                }
                std::cout << format_injective_verdict(v) << "\n";
            }
        } else if (blocking->parsed()) {
            const NuCaSpec spec = blkSpec.get();
            const LocalRule f = shared_default(spec);
            const Word u = parse_word(blkWord, spec.alphabet);
            const std::int64_t budget = blkBudget > 0 ? blkBudget : env_budget(1 << 16);
            if (certify->parsed()) {
                const auto cert = certify_strongly_blocking(f, u, blkWidth, budget);
                if (!cert) {
                    std::cout << "not certified: word=" << format_word(u, spec.alphabet)
                              << " width=" << blkWidth << "\n";
                } else if (blkJson) {
                    std::cout << certificate_to_json(*cert, spec.alphabet);
                } else {
                    std::cout << "certified: word=" << format_word(u, spec.alphabet)
                              << " width=" << blkWidth << " offset=" << cert->offset
                              << " columnPreperiod=" << cert->columnPreperiod.size()
                              << " columnPeriod=" << cert->columnPeriod.size() << "\n";
                }
            } else if (refute->parsed()) {
                const auto ref = refute_blocking(f, u, blkWidth, blkHorizon, blkPadding);
                if (!ref) {
                    std::cout << "no refutation: word=" << format_word(u, spec.alphabet)
                              << " width=" << blkWidth << " horizon=" << blkHorizon
                              << " padding=" << blkPadding << "\n";
                } else if (blkJson) {
                    std::cout << refutation_to_json(*ref, spec.alphabet);
                } else {
                    std::cout << "refuted: word=" << format_word(u, spec.alphabet)
                              << " width=" << blkWidth
                              << " left=" << format_word(ref->leftB, spec.alphabet)
                              << " right=" << format_word(ref->rightB, spec.alphabet) << "\n";
                }
            } else {
                const auto hit = find_strongly_blocking(f, blkWidth, blkMaxLen, budget);
                if (!hit) {
                    std::cout << "none found: width=" << blkWidth << " maxLen=" << blkMaxLen
                              << "\n";
                } else if (blkJson) {
                    std::cout << certificate_to_json(hit->certificate, spec.alphabet);
                } else {
                    std::cout << "found: word=" << format_word(hit->word, spec.alphabet)
                              << " width=" << blkWidth << "\n";
                }
            }
        } else if (classify->parsed()) {
            const NuCaSpec spec = clsSpec.get();
            clsBounds.setBudget = env_budget(clsBounds.setBudget);
            const NuCaClassification c = classify_nuca(spec, clsBounds);
            std::cout << format_nuca_classification(c, spec.alphabet) << "\n";
            if (clsDetect) {
                if (!c.defaultClassification) {
                    std::cout << "ultimate periodicity: inconclusive (no single default"
                                 " rule)\n";
                } else {
                    const UltimatePeriodicityReport rep = detect_global_ultimate_periodicity(
                        spec, *c.defaultClassification, clsSamples, clsSeed);
                    if (rep.kind == UltimatePeriodicityReport::Kind::Verified)
                        std::cout << "ultimate periodicity: verified preperiod<="
                                  << rep.preperiod << " period|" << rep.period
                                  << " samples=" << rep.samples << "\n";
                    else
                        std::cout << "ultimate periodicity: inconclusive\n";
                }
            }
        } else if (compat->parsed()) {
            const NuCaSpec spec = cmpSpec.get();
            const LocalRule f = parse_rule(cmpRule, spec.alphabet, spec.radius);
            std::cout << "n-compatible: " << (is_n_compatible(spec, f, cmpN) ? "yes" : "no")
                      << "\n";
        } else if (zooCmd->parsed()) {
            if (zooList->parsed()) {
                for (const auto& e : zoo::zoo_catalog()) {
                    std::cout << e.name;
                    if (e.surjective)
                        std::cout << " surjective=" << (*e.surjective ? "yes" : "no");
                    if (e.injective)
                        std::cout << " injective=" << (*e.injective ? "yes" : "no");
                    std::cout << " -- " << e.note << "\n";
                }
            } else if (zooVerify->parsed()) {
                const zoo::ZooEntry* e = zoo::zoo_find(zooName);
                if (!e) throw InputError("no zoo entry named '" + zooName + "'");
                const zoo::EntryReport rep = zoo::verify_entry(*e);
                for (const auto& c : rep.checks)
                    std::cout << c.name << ": " << (c.ok ? "ok" : "FAIL") << " (" << c.detail
                              << ")\n";
                std::cout << (rep.ok() ? "all checks passed" : "CHECKS FAILED") << "\n";
            } else {
                const zoo::ZooEntry* e = zoo::zoo_find(zooRenderName);
                if (!e) throw InputError("no zoo entry named '" + zooRenderName + "'");
                EpConfig x;
                if (!zooConfig.empty()) {
                    x = parse_config(zooConfig, e->spec.alphabet);
                } else if (zooSeeded) {
                    std::mt19937_64 rng(zooSeed);
                    Word c(64);
                    for (std::size_t i = 0; i < c.size(); ++i)
                        c.set(i, static_cast<Symbol>(rng() %
                                                     static_cast<std::uint64_t>(
                                                         e->spec.alphabet.q)));
                    x = make_finite_config(e->spec.alphabet, 0, c, -32);
                } else {
                    x = make_finite_config(e->spec.alphabet, 0,
                                           Word{e->spec.alphabet.q - 1}, 0);
                }
                const Trace tr = trace(e->spec, x, -zooHalf, zooHalf - 1, zooSteps);
                const std::string out = zooOut.empty() ? zooRenderName + ".pgm" : zooOut;
                write_pgm(out, tr, e->spec.alphabet);
                std::cout << out << ": " << 2 * zooHalf << "x" << tr.rows.size() << "\n";
            }
        } else if (oracle->parsed()) {
            const NuCaSpec spec = oraSpec.get();
            if (oracleWhat == "surjective") {
                const std::int64_t budget = oraBudget > 0 ? oraBudget : env_budget(1LL << 27);
                const SurjectivityOracleResult r = surjectivity_oracle(spec, oraBound, budget);
                std::cout << format_oracle_result(r, spec.alphabet) << "\n";
            } else {
                const std::int64_t budget = oraBudget > 0 ? oraBudget : env_budget(1 << 22);
                const auto w = injectivity_witness_oracle(spec, budget);
                std::cout << format_witness_pair(w) << "\n";
            }
        }
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
