#pragma once

#include <string>

#include "qoct/grid.hpp"
#include "qoct/types.hpp"

namespace qoct {

enum class TraceKind { oct_intensity, oct_envelope, qoct_coincidence };

/// Delay-domain trace with its normalization record. `raw` holds the physical
/// values with the proportionality constant set to 1; `self_term` is the
/// delay-independent background (Gamma0 or Lambda0) that the normalized trace
/// divides by.
struct Interferogram {
  DelayGrid delays;
  ArrayXd raw;
  TraceKind kind = TraceKind::oct_envelope;
  double self_term = 0.0;
  std::string norm_rule = "value / self_term";

  ArrayXd normalized() const {
    if (!(self_term > 0.0))
      throw contract_error("Interferogram: normalization undefined (self term is zero)");
    return raw / self_term;
  }
};

}  // namespace qoct
