#pragma once

#include <stdexcept>
#include <string>

namespace otrl {

// Library failure reasons. Kept coarse enough to map onto the C API's
// otrl_status codes without losing the interesting distinctions in what().
enum class Errc {
  invalid_argument,
  parse,
  point_not_in_space,
  wrong_space,
  space_mismatch,
  empty_support,
  nonpositive_weight,
  mass_not_one,
  q_mass_present,
  not_lipschitz,
  mixed_q_pairing,
  weights_not_multiple,
  instance_too_large,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace otrl
