#include "rejuv/steady_state.hpp"

namespace rejuv {

SteadyState<double> solve_steady_state_quadrature(const SmpModel& model) {
  SteadyState<double> out;
  out.chain = build_embedded_chain_quadrature(model);
  out.visits = steady_state_edtmc(out.chain.transition);
  out.pi = state_probabilities(out.visits, out.chain.sojourn);
  out.availability = availability(model, out.pi);
  out.unavailability = unavailability(model, out.pi);
  return out;
}

}  // namespace rejuv
