#include "mdlreg/learner.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mdlreg {

void HypothesisTable::validate() const {
  std::set<std::uint64_t> ids;
  double kraft = 0.0;
  for (const auto& h : entries) {
    if (!(h.desc_len >= 0.0))
      throw std::invalid_argument("HypothesisTable: desc_len < 0");
    if (h.error_count > m)
      throw std::invalid_argument("HypothesisTable: error_count > m");
    if (!ids.insert(h.id).second)
      throw std::invalid_argument("HypothesisTable: duplicate id");
    kraft += std::exp2(-h.desc_len);
  }
  if (kraft > 1.0 + 1e-9)
    throw std::invalid_argument("HypothesisTable: Kraft sum exceeds 1");
}

Objective objective(RegParam lambda, double desc_len,
                    std::uint64_t error_count, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("objective: m = 0");
  if (error_count > m)
    throw std::invalid_argument("objective: error_count > m");
  double prior = lambda.lambda() * desc_len;
  return {prior + log_binomial(m, error_count),
          prior + static_cast<double>(m) *
                      entropy(Prob(static_cast<double>(error_count) /
                                   static_cast<double>(m)))};
}

namespace {
// tie-break: desc_len, then error_count, then id
bool better(double obj_a, const Hypothesis& a, double obj_b,
            const Hypothesis& b) {
  if (obj_a != obj_b) return obj_a < obj_b;
  if (a.desc_len != b.desc_len) return a.desc_len < b.desc_len;
  if (a.error_count != b.error_count) return a.error_count < b.error_count;
  return a.id < b.id;
}
}  // namespace

std::uint64_t mdl_select(RegParam lambda, const HypothesisTable& table,
                         bool use_exact) {
  const Hypothesis* best = nullptr;
  double best_obj = 0.0;
  for (const auto& h : table.entries) {
    if (2 * h.error_count > table.m) continue;  // L_S <= 1/2, exact in ints
    Objective o = objective(lambda, h.desc_len, h.error_count, table.m);
    double obj = use_exact ? o.exact : o.approx;
    if (!best || better(obj, h, best_obj, *best)) {
      best = &h;
      best_obj = obj;
    }
  }
  if (!best) throw std::runtime_error("no feasible hypothesis");
  return best->id;
}

std::uint64_t srm_select(const HypothesisTable& table) {
  if (table.entries.empty())
    throw std::invalid_argument("srm_select: empty table");
  const Hypothesis* best = nullptr;
  double best_obj = 0.0;
  double md = static_cast<double>(table.m);
  for (const auto& h : table.entries) {
    double obj = static_cast<double>(h.error_count) / md +
                 std::sqrt(h.desc_len / md);
    if (!best || better(obj, h, best_obj, *best)) {
      best = &h;
      best_obj = obj;
    }
  }
  return best->id;
}

HypothesisTable load_table_csv(std::istream& in, std::uint64_t m) {
  HypothesisTable table;
  table.m = m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string id_s, d_s, e_s;
    if (!std::getline(row, id_s, ',') || !std::getline(row, d_s, ',') ||
        !std::getline(row, e_s))
      throw std::invalid_argument("load_table_csv: expected 3 columns");
    if (!id_s.empty() && !std::isdigit(static_cast<unsigned char>(id_s[0])))
      continue;  // header row
    table.entries.push_back({std::stoull(id_s), std::stod(d_s),
                             std::stoull(e_s)});
  }
  table.validate();
  return table;
}

}  // namespace mdlreg
