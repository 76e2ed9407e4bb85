#include "billiards/coding.hpp"

#include "billiards/errors.hpp"

#include <cstdlib>
#include <optional>

namespace billiards {

std::string to_string(const SymbolWord& word) {
  std::string out;
  for (std::size_t i = 0; i < word.symbols.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(word.symbols[i]);
  }
  return out;
}

TransitionTable::TransitionTable(int N) : n_(N) {
  if (N < 1) throw DomainError("transition table: N must be at least 1");
}

bool TransitionTable::allows(int from, int to) const {
  if (!contains(from) || !contains(to)) return false;
  if (from == 0) return to == 0 || to == 1 || to == -1;
  if (to == 0) return true;
  if (std::abs(from) == n_) return false;
  return from > 0 ? to == from + 1 : to == from - 1;
}

std::vector<int> TransitionTable::successors(int symbol) const {
  if (symbol == 0) return {0, 1, -1};
  if (std::abs(symbol) == n_) return {0};
  return {symbol > 0 ? symbol + 1 : symbol - 1, 0};
}

SymbolWord encode(const Table& table, const std::vector<PhasePoint>& orbit, int N) {
  SymbolWord word;
  word.N = N;
  int in_block = 0;
  int sign = 1;
  for (const PhasePoint& p : orbit) {
    if (!table.has_arc(p.arc)) throw UntrackedCollision("encode: collision with " + to_string(p.arc));
    if (table.is_curved_cap(p.arc)) {
      word.symbols.push_back(0);
      in_block = 0;
    } else if (p.arc == ArcId::vertical_cap) {
      continue;
    } else {
      if (in_block == 0) sign = p.arc == ArcId::gamma1 ? 1 : -1;
      if (++in_block > N) throw BlockTooLong("encode: more than N consecutive wall collisions");
      word.symbols.push_back(sign * in_block);
    }
  }
  return word;
}

bool is_admissible(const SymbolWord& word) {
  if (word.N < 1) return false;
  const TransitionTable table(word.N);
  for (std::size_t i = 0; i < word.symbols.size(); ++i) {
    if (!table.contains(word.symbols[i])) return false;
    if (i > 0 && !table.allows(word.symbols[i - 1], word.symbols[i])) return false;
  }
  return true;
}

BigInt count_words(int N, int n) {
  if (N < 1 || n < 1) throw DomainError("count_words: N and n must be at least 1");
  const TransitionTable table(N);
  const int size = 2 * N + 1;
  auto index = [N](int s) { return s + N; };

  std::vector<BigInt> paths(size, BigInt(1));
  for (int step = 1; step < n; ++step) {
    std::vector<BigInt> next(size, BigInt(0));
    for (int s = -N; s <= N; ++s)
      for (const int t : table.successors(s)) next[index(t)] += paths[index(s)];
    paths = std::move(next);
  }
  BigInt total = 0;
  for (const auto& p : paths) total += p;
  return total;
}

ItineraryPlan plan_itinerary(const SymbolWord& word) {
  if (word.symbols.empty()) throw DomainError("plan_itinerary: empty word");
  if (!is_admissible(word)) throw DomainError("plan_itinerary: word is not admissible");

  ItineraryPlan plan;
  plan.padded.N = word.N;
  const int first = word.symbols.front();
  if (first != 0) {
    const int sign = first > 0 ? 1 : -1;
    plan.padded.symbols.push_back(0);
    for (int j = 1; j < std::abs(first); ++j) plan.padded.symbols.push_back(sign * j);
  }
  plan.offset = plan.padded.symbols.size();
  plan.padded.symbols.insert(plan.padded.symbols.end(), word.symbols.begin(), word.symbols.end());
  if (word.symbols.back() != 0) plan.padded.symbols.push_back(0);

  std::optional<int> block;
  for (const int s : plan.padded.symbols) {
    if (s == 0) {
      if (block) plan.level_differences.push_back(*block);
      block = 0;
    } else {
      block = s;
    }
  }
  return plan;
}

}  // namespace billiards
