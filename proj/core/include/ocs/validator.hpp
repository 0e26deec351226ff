#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ocs/individuals.hpp"
#include "ocs/method.hpp"
#include "ocs/taxonomy.hpp"
#include "ocs/violation.hpp"

namespace ocs {

/// Seed classes the individual rules are phrased against.
inline constexpr std::string_view kCrimpClass = "crimp";
inline constexpr std::string_view kCrimpUseClass = "crimp_use_of";

/// SINGLE-HEAD, TERMINAL-EMPTY, ACYCLIC-PRECEDES, ONLY-RANGE,
/// AVAILABLE-CARDS and the static EXACTLY-N check. Works on leniently parsed
/// documents; never throws for a broken list.
std::vector<Violation> check_method(const MethodDoc& doc, const Taxonomy& t);

/// EXACTLY-N, SOME-EXISTS, INVERSE-FUNCTIONAL, ONLY-RANGE over an individual
/// graph. Throws UnresolvedReference for undeclared individuals or types.
std::vector<Violation> check_individuals(const Taxonomy& t, const IndividualGraph& g);

struct ValidationReport {
  bool consistent = true;  // no Error violations
  bool coherent = true;    // consistent and no COHERENCE-EMPTY-CLASS warnings
  std::vector<Violation> violations;
};

/// Taxonomy, name, method and individual checks together, sorted. A Sleight
/// class counts as populated when it has a variant or a typed individual.
ValidationReport check_all(const Taxonomy& t, std::span<const MethodDoc> docs, const IndividualGraph& g);

}  // namespace ocs
