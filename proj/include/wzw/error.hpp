#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wzw {

enum class Errc {
  invalid_rank,
  weight_out_of_range,
  unsupported_weight,
  truncation_violation,
  zero_vector,
  degree_mismatch,
  relation_violation,
  resource_limit,
  invalid_argument,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_rank: return "invalid-rank";
    case Errc::weight_out_of_range: return "weight-out-of-range";
    case Errc::unsupported_weight: return "unsupported-weight";
    case Errc::truncation_violation: return "truncation-violation";
    case Errc::zero_vector: return "zero-vector";
    case Errc::degree_mismatch: return "degree-mismatch";
    case Errc::relation_violation: return "relation-violation";
    case Errc::resource_limit: return "resource-limit";
    case Errc::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wzw
