#pragma once

#include <random>
#include <vector>

namespace lsvc {

using StochasticMatrix = std::vector<std::vector<double>>;

inline constexpr int kMaxAlphabet = 8;

/// X -> Y -> X^ -> T given by the law of X and three transition matrices.
struct MarkovChain {
  std::vector<double> p_x;
  StochasticMatrix y_given_x;
  StochasticMatrix xhat_given_y;
  StochasticMatrix t_given_xhat;
};

struct DpiReport {
  double i_y_xhat = 0.0;  // bits
  double i_y_t = 0.0;     // bits
  bool holds = false;
};

/// Throws DataError for alphabets above 8 or rows not summing to 1.
void validate_chain(const MarkovChain& chain);

/// Exact mutual informations by summing the full four-way joint law.
DpiReport dpi_check(const MarkovChain& chain);

MarkovChain random_chain(std::mt19937_64& rng, int max_alphabet = kMaxAlphabet);

}  // namespace lsvc
