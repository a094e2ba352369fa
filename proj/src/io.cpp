#include "nuca/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nuca/errors.hpp"

namespace nuca {

namespace {

using nlohmann::json;

json rules_to_json(const std::vector<LocalRule>& rules) {
    json arr = json::array();
    for (const LocalRule& f : rules) arr.push_back(format_rule(f));
    return arr;
}

std::vector<LocalRule> rules_from_json(const json& arr, Alphabet alphabet, int radius,
                                       const char* field) {
    if (!arr.is_array() || arr.empty())
        throw InputError(std::string("spec field '") + field + "' must be a nonempty array");
    std::vector<LocalRule> out;
    out.reserve(arr.size());
    for (const json& item : arr) {
        if (!item.is_string())
            throw InputError(std::string("spec field '") + field + "' must hold rule strings");
        out.push_back(parse_rule(item.get<std::string>(), alphabet, radius));
    }
    return out;
}

std::int64_t int_field(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw InputError(std::string("spec needs integer field '") + field + "'");
    return j[field].get<std::int64_t>();
}

// rest after a literal prefix, or nullopt
std::optional<std::string> after_prefix(const std::string& line, const std::string& prefix) {
    if (line.size() < prefix.size() || line.compare(0, prefix.size(), prefix) != 0)
        return std::nullopt;
    return line.substr(prefix.size());
}

std::pair<Word, std::int64_t> parse_word_at(const std::string& text, const Alphabet& alphabet) {
    const std::size_t at = text.rfind('@');
    if (at == std::string::npos) throw InputError("expected <word>@<pos> in '" + text + "'");
    Word w = parse_word(text.substr(0, at), alphabet);
    std::int64_t pos = 0;
    try {
        pos = std::stoll(text.substr(at + 1));
    } catch (const std::exception&) {
        throw InputError("bad position in '" + text + "'");
    }
    return {std::move(w), pos};
}

// splits "witnessA=<a> witnessB=<b>" (configs never contain spaces)
std::pair<EpConfig, EpConfig> parse_config_pair(const std::string& rest, Alphabet alphabet) {
    const auto a = after_prefix(rest, "witnessA=");
    if (!a) throw InputError("expected witnessA= in verdict line");
    const std::size_t space = a->find(' ');
    if (space == std::string::npos) throw InputError("expected witnessB= in verdict line");
    const auto b = after_prefix(a->substr(space + 1), "witnessB=");
    if (!b) throw InputError("expected witnessB= in verdict line");
    return {parse_config(a->substr(0, space), alphabet), parse_config(*b, alphabet)};
}

json words_to_json(const std::vector<Word>& words, const Alphabet& alphabet) {
    json arr = json::array();
    for (const Word& w : words) arr.push_back(format_word(w, alphabet));
    return arr;
}

}  // namespace

std::string spec_to_json(const NuCaSpec& spec) {
    json j;
    j["alphabet"] = spec.alphabet.q;
    j["radius"] = spec.radius;
    j["k"] = spec.k;
    j["window"] = rules_to_json(spec.window);
    j["left"] = rules_to_json(spec.leftTail);
    j["right"] = rules_to_json(spec.rightTail);
    return j.dump(2) + "\n";
}

NuCaSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("bad spec JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("spec JSON must be an object");

    NuCaSpec spec;
    const std::int64_t q = int_field(j, "alphabet");
    if (q < 1 || q > 65536) throw InputError("alphabet size out of range");
    spec.alphabet = Alphabet{static_cast<int>(q)};
    const std::int64_t r = int_field(j, "radius");
    if (r < 0 || r > 30) throw InputError("radius out of range");
    spec.radius = static_cast<int>(r);

    spec.leftTail = rules_from_json(j.at("left"), spec.alphabet, spec.radius, "left");
    spec.rightTail = rules_from_json(j.at("right"), spec.alphabet, spec.radius, "right");

    if (j.contains("window")) {
        spec.window = rules_from_json(j["window"], spec.alphabet, spec.radius, "window");
        if (spec.window.size() % 2 == 0) throw InputError("window must have odd length 2k+1");
        spec.k = static_cast<int>((spec.window.size() - 1) / 2);
        if (j.contains("k") && int_field(j, "k") != spec.k)
            throw InputError("field 'k' disagrees with window length");
    } else {
        if (j.contains("k") && int_field(j, "k") != 0)
            throw InputError("missing window for k > 0");
        if (!(spec.leftTail[0] == spec.rightTail[0]))
            throw InputError("window omitted but tail phase-0 rules disagree");
        spec.k = 0;
        spec.window = {spec.leftTail[0]};
    }

    check_spec(spec);
    return spec;
}

NuCaSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return spec_from_json(buf.str());
}

void save_spec(const std::string& path, const NuCaSpec& spec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write spec file '" + path + "'");
    out << spec_to_json(spec);
}

std::string format_surjective_verdict(const SurjectivityVerdict& v, const Alphabet& alphabet) {
    if (v.kind == SurjectivityVerdict::Kind::Surjective) return "surjective: yes";
    return "surjective: no witness=" + format_word(v.witnessWord, alphabet) + "@" +
           std::to_string(v.position);
}

SurjectivityVerdict parse_surjective_verdict(const std::string& line, Alphabet alphabet) {
    SurjectivityVerdict v;
    if (line == "surjective: yes") {
        v.kind = SurjectivityVerdict::Kind::Surjective;
        return v;
    }
    if (const auto rest = after_prefix(line, "surjective: no witness=")) {
        v.kind = SurjectivityVerdict::Kind::NotSurjective;
        std::tie(v.witnessWord, v.position) = parse_word_at(*rest, alphabet);
        return v;
    }
    throw InputError("unrecognized surjectivity verdict line");
}

std::string format_injective_verdict(const InjectivityVerdict& v) {
    if (v.kind == InjectivityVerdict::Kind::Injective) return "injective: yes";
    return "injective: no witnessA=" + format_config(v.witnessA) +
           " witnessB=" + format_config(v.witnessB);
}

InjectivityVerdict parse_injective_verdict(const std::string& line, Alphabet alphabet) {
    InjectivityVerdict v;
    if (line == "injective: yes") {
        v.kind = InjectivityVerdict::Kind::Injective;
        return v;
    }
    if (const auto rest = after_prefix(line, "injective: no ")) {
        v.kind = InjectivityVerdict::Kind::NotInjective;
        std::tie(v.witnessA, v.witnessB) = parse_config_pair(*rest, alphabet);
        return v;
    }
    throw InputError("unrecognized injectivity verdict line");
}

std::string format_oracle_result(const SurjectivityOracleResult& r, const Alphabet& alphabet) {
    if (r.kind == SurjectivityOracleResult::Kind::RefutedAt)
        return "refuted at n=" + std::to_string(r.n) +
               " word=" + format_word(r.word, alphabet) + "@" + std::to_string(r.position);
    return "consistent up to n=" + std::to_string(r.bound);
}

SurjectivityOracleResult parse_oracle_result(const std::string& line, Alphabet alphabet) {
    SurjectivityOracleResult r;
    if (const auto rest = after_prefix(line, "consistent up to n=")) {
        r.kind = SurjectivityOracleResult::Kind::ConsistentUpTo;
        try {
            r.bound = std::stoll(*rest);
        } catch (const std::exception&) {
            throw InputError("bad bound in oracle line");
        }
        return r;
    }
    if (const auto rest = after_prefix(line, "refuted at n=")) {
        r.kind = SurjectivityOracleResult::Kind::RefutedAt;
        const std::size_t space = rest->find(' ');
        if (space == std::string::npos) throw InputError("expected word= in oracle line");
        try {
            r.n = std::stoll(rest->substr(0, space));
        } catch (const std::exception&) {
            throw InputError("bad n in oracle line");
        }
        const auto wordPart = after_prefix(rest->substr(space + 1), "word=");
        if (!wordPart) throw InputError("expected word= in oracle line");
        std::tie(r.word, r.position) = parse_word_at(*wordPart, alphabet);
        return r;
    }
    throw InputError("unrecognized oracle line");
}

std::string format_witness_pair(const std::optional<std::pair<EpConfig, EpConfig>>& w) {
    if (!w) return "no witness within budget";
    return "witness pair witnessA=" + format_config(w->first) +
           " witnessB=" + format_config(w->second);
}

std::optional<std::pair<EpConfig, EpConfig>> parse_witness_pair(const std::string& line,
                                                                Alphabet alphabet) {
    if (line == "no witness within budget") return std::nullopt;
    if (const auto rest = after_prefix(line, "witness pair "))
        return parse_config_pair(*rest, alphabet);
    throw InputError("unrecognized witness-pair line");
}

std::string format_ca_classification(const CaClassification& c, const Alphabet& alphabet) {
    switch (c.kind) {
        case CaClassification::Kind::Equicontinuous:
            return "equicontinuous: preperiod=" + std::to_string(c.preperiod) +
                   " period=" + std::to_string(c.period) +
                   " blockLen=" + std::to_string(c.blockLen);
        case CaClassification::Kind::AlmostEquicontinuousCert:
            return "almost-equicontinuous: word=" + format_word(c.blockingWord, alphabet) +
                   " offset=" + std::to_string(c.certificate ? c.certificate->offset : 0) +
                   " columnPreperiod=" +
                   std::to_string(c.certificate
                                      ? static_cast<std::int64_t>(
                                            c.certificate->columnPreperiod.size())
                                      : 0) +
                   " columnPeriod=" +
                   std::to_string(c.certificate ? static_cast<std::int64_t>(
                                                      c.certificate->columnPeriod.size())
                                                : 0);
        case CaClassification::Kind::NoBlockingWordUpTo:
            break;
    }
    return "no blocking word: maxLen=" + std::to_string(c.maxLen) +
           " horizon=" + std::to_string(c.horizon);
}

std::string format_nuca_classification(const NuCaClassification& c, const Alphabet& alphabet) {
    std::string out;
    switch (c.kind) {
        case NuCaClassification::Kind::Equicontinuous:
            out = "equicontinuous: compatibleLen=" + std::to_string(c.compatibleLen);
            break;
        case NuCaClassification::Kind::AlmostEquicontinuous:
            out = "almost-equicontinuous: word=" + format_word(c.blockingWord, alphabet) +
                  " compatibleLen=" + std::to_string(c.compatibleLen);
            break;
        case NuCaClassification::Kind::Unknown:
            out = "unknown";
            if (!c.singleDefault) out += " (tails do not share a single default rule)";
            break;
    }
    if (c.defaultClassification)
        out += "\ndefault rule: " + format_ca_classification(*c.defaultClassification, alphabet);
    return out;
}

std::string certificate_to_json(const BlockingCertificate& c, const Alphabet& alphabet) {
    json j;
    j["word"] = format_word(c.word, alphabet);
    j["width"] = c.width;
    j["offset"] = c.offset;
    j["columnPreperiod"] = words_to_json(c.columnPreperiod, alphabet);
    j["columnPeriod"] = words_to_json(c.columnPeriod, alphabet);
    json trace = json::array();
    for (const auto& set : c.reachableSetTrace) trace.push_back(words_to_json(set, alphabet));
    j["reachableSetTrace"] = trace;
    return j.dump(2) + "\n";
}

std::string refutation_to_json(const BlockingRefutation& r, const Alphabet& alphabet) {
    json j;
    j["word"] = format_word(r.word, alphabet);
    j["width"] = r.width;
    j["leftA"] = format_word(r.leftA, alphabet);
    j["rightA"] = format_word(r.rightA, alphabet);
    j["leftB"] = format_word(r.leftB, alphabet);
    j["rightB"] = format_word(r.rightB, alphabet);
    j["splitTime"] = r.splitTime;
    return j.dump(2) + "\n";
}

void write_pgm(const std::string& path, const Trace& tr, const Alphabet& alphabet) {
    if (tr.b < tr.a) throw InputError("trace window is empty");
    const std::int64_t width = tr.b - tr.a + 1;
    const std::int64_t height = static_cast<std::int64_t>(tr.rows.size());
    if (height == 0) throw InputError("trace has no rows");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write image file '" + path + "'");
    out << "P5\n" << width << " " << height << "\n255\n";
    const int den = alphabet.q > 1 ? alphabet.q - 1 : 1;
    std::string row(static_cast<std::size_t>(width), '\0');
    for (const Word& r : tr.rows) {
        for (std::int64_t i = 0; i < width; ++i)
            row[static_cast<std::size_t>(i)] =
                static_cast<char>(static_cast<unsigned char>(r[static_cast<std::size_t>(i)] *
                                                             255 / den));
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw InputError("short write to image file '" + path + "'");
}

}  // namespace nuca
