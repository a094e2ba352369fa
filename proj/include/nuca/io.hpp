#pragma once

#include <optional>
#include <string>
#include <utility>

#include "nuca/core.hpp"
#include "nuca/debruijn.hpp"
#include "nuca/dynamics.hpp"
#include "nuca/engine.hpp"
#include "nuca/rules.hpp"

namespace nuca {

// JSON spec format:
//   {"alphabet": q, "radius": r, "k": k,
//    "window": ["<table>", ...],   // 2k+1 rule tables; may be omitted for k=0
//    "left":   ["<table>", ...],   // left tail, phase 0 first
//    "right":  ["<table>", ...]}
// Rule tables use the format_rule literal.  "k" is optional when "window" is
// present (it must then match); with "window" absent, both tails must share
// their phase-0 rule, which becomes the single k = 0 window cell.
std::string spec_to_json(const NuCaSpec& spec);
NuCaSpec spec_from_json(const std::string& text);
NuCaSpec load_spec(const std::string& path);
void save_spec(const std::string& path, const NuCaSpec& spec);

// Verdict line grammar (each parses back exactly):
//   surjective: yes
//   surjective: no witness=<word>@<pos>
//   injective: yes
//   injective: no witnessA=<config> witnessB=<config>
//   refuted at n=<n> word=<word>@<pos>
//   consistent up to n=<bound>
//   witness pair witnessA=<config> witnessB=<config>
//   no witness within budget
std::string format_surjective_verdict(const SurjectivityVerdict& v, const Alphabet& alphabet);
SurjectivityVerdict parse_surjective_verdict(const std::string& line, Alphabet alphabet);

std::string format_injective_verdict(const InjectivityVerdict& v);
InjectivityVerdict parse_injective_verdict(const std::string& line, Alphabet alphabet);

std::string format_oracle_result(const SurjectivityOracleResult& r, const Alphabet& alphabet);
SurjectivityOracleResult parse_oracle_result(const std::string& line, Alphabet alphabet);

std::string format_witness_pair(const std::optional<std::pair<EpConfig, EpConfig>>& w);
std::optional<std::pair<EpConfig, EpConfig>> parse_witness_pair(const std::string& line,
                                                                Alphabet alphabet);

// Human-readable classification reports (possibly multi-line).
std::string format_ca_classification(const CaClassification& c, const Alphabet& alphabet);
std::string format_nuca_classification(const NuCaClassification& c, const Alphabet& alphabet);

std::string certificate_to_json(const BlockingCertificate& c, const Alphabet& alphabet);
std::string refutation_to_json(const BlockingRefutation& r, const Alphabet& alphabet);

// Binary P5, one pixel per cell, symbol a -> a*255/(q-1) (0 when q = 1).
void write_pgm(const std::string& path, const Trace& tr, const Alphabet& alphabet);

}  // namespace nuca
