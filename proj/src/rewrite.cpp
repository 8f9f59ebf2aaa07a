#include "jrpulse/rewrite.hpp"

#include <stdexcept>

#include "jrpulse/errors.hpp"
#include "jrpulse/su2.hpp"

namespace jrpulse {

PulseSequence merge_delays(const PulseSequence& seq) {
  PulseSequence out{seq.name, seq.target, {}};
  double pending = 0.0;
  bool have_pending = false;
  auto flush = [&] {
    if (have_pending && pending != 0.0) out.ins.push_back(Delay{pending});
    pending = 0.0;
    have_pending = false;
  };
  for (const Instruction& ins : seq.ins) {
    if (const auto* d = std::get_if<Delay>(&ins)) {
      pending += d->angle;
      have_pending = true;
    } else {
      flush();
      out.ins.push_back(ins);
    }
  }
  flush();
  return out;
}

PulseSequence commute_frame_rotations_to_end(const PulseSequence& seq) {
  PulseSequence out{seq.name, seq.target, {}};
  double beta = 0.0;
  for (const Instruction& ins : seq.ins) {
    if (const auto* fr = std::get_if<FrameRotation>(&ins)) {
      beta += fr->angle;
    } else if (const auto* p = std::get_if<HardPulse>(&ins)) {
      out.ins.push_back(HardPulse{p->nutation, p->phase - beta});
    } else {
      out.ins.push_back(ins);
    }
  }
  if (beta != 0.0) out.ins.push_back(FrameRotation{beta});
  return out;
}

PulseSequence drop_terminal_frame_rotations(const PulseSequence& seq,
                                            TerminalFramePolicy policy) {
  // precondition: frame rotations form a suffix
  bool in_suffix = false;
  std::size_t suffix_start = seq.ins.size();
  for (std::size_t k = 0; k < seq.ins.size(); ++k) {
    const bool is_frame = std::holds_alternative<FrameRotation>(seq.ins[k]);
    if (is_frame && !in_suffix) {
      in_suffix = true;
      suffix_start = k;
    } else if (!is_frame && in_suffix) {
      throw std::invalid_argument(
          "drop_terminal_frame_rotations: frame rotations are not all terminal");
    }
  }
  switch (policy) {
    case TerminalFramePolicy::keep:
      return seq;
    case TerminalFramePolicy::drop: {
      PulseSequence out{seq.name, seq.target, {}};
      out.ins.assign(seq.ins.begin(), seq.ins.begin() + suffix_start);
      return out;
    }
    case TerminalFramePolicy::composite:
      throw NotImplementedError(
          "terminal frame policy 'composite' (composite-z expansion) is not implemented");
  }
  throw std::logic_error("unreachable");
}

PulseSequence normalize_negative_delays(const PulseSequence& seq, WrapStyle style) {
  PulseSequence out{seq.name, seq.target, {}};
  for (const Instruction& ins : seq.ins) {
    const auto* d = std::get_if<Delay>(&ins);
    if (!d || d->angle >= 0.0) {
      out.ins.push_back(ins);
      continue;
    }
    double a = d->angle;
    if (style == WrapStyle::wrap4tau) {
      while (a < 0.0) a += 2.0 * kPi;
      if (a != 0.0) out.ins.push_back(Delay{a});
    } else {
      int wraps = 0;
      while (a < 0.0) {
        a += kPi;
        ++wraps;
      }
      if (a != 0.0) out.ins.push_back(Delay{a});
      out.ins.push_back(FrameRotation{wraps * kPi});
    }
  }
  return out;
}

}  // namespace jrpulse
