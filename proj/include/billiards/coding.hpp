#pragma once

#include "billiards/geometry.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace billiards {

using BigInt = boost::multiprecision::cpp_int;

/// Finite word over the alphabet {-N, ..., N}.
struct SymbolWord {
  std::vector<int> symbols;
  int N = 1;

  bool operator==(const SymbolWord&) const = default;
};

std::string to_string(const SymbolWord& word);

/// Transitions of the subshift: 0 -> {0, 1, -1}, i -> {i+1, 0} and
/// -i -> {-i-1, 0} for 1 <= i < N, +-N -> {0}.
class TransitionTable {
 public:
  explicit TransitionTable(int N);

  int bound() const { return n_; }
  bool contains(int symbol) const { return symbol >= -n_ && symbol <= n_; }
  bool allows(int from, int to) const;
  std::vector<int> successors(int symbol) const;

 private:
  int n_;
};

/// Codes an orbit: 0 at every curved-cap collision, 1..j (first wall gamma1)
/// or -1..-j (first wall gamma2) along each block of wall collisions.
/// Flat-cap collisions of a semistadium carry no symbol.
SymbolWord encode(const Table& table, const std::vector<PhasePoint>& orbit, int N);

bool is_admissible(const SymbolWord& word);

/// Number of admissible words of length n, exact.
BigInt count_words(int N, int n);

/// Level differences realizing a word: the word padded to start and end at
/// symbol 0, its cap-to-cap blocks, and where the word sits in the padding.
struct ItineraryPlan {
  std::vector<int> level_differences;
  SymbolWord padded;
  std::size_t offset = 0;
};

ItineraryPlan plan_itinerary(const SymbolWord& word);

}  // namespace billiards
