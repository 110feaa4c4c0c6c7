#include "tfm/pipeline.hpp"

namespace tfm {

Simulation simulate(const DeviceConfig& c, std::optional<int> points) {
  c.require_model();
  const int n = points.value_or(c.grid.points);
  const SpectralGrid gs = signal_grid(c.model, c.grid.half_span, n);
  const SpectralGrid gi = idler_grid(c.model, c.grid.half_span, n);
  ForwardResult f = forward(c.model, gs, gi);
  PiPhaseResult imposed = impose_pi_phase(f.jsa, c.analysis.pi);

  std::optional<TargetState> target;
  if (c.target) target = c.target_state();
  StateReport report = analyze_state(imposed.jsa, target, c.analysis.subspace, c.analysis.reported_modes);

  const SpectralGrid gp = f.l_p.grid;
  Spectra sp{std::move(f.fir),
             std::move(f.l_i),
             std::move(f.l_p),
             std::move(f.l_s),
             bus_transmission(c.model.idler, gi).values.cwiseAbs2(),
             bus_transmission(c.model.pump_resonance, gp).values.cwiseAbs2(),
             bus_transmission(c.model.signal, gs).values.cwiseAbs2()};

  const PgrInput in = make_pgr_input(c.pgr_raw());
  return Simulation{std::move(imposed.jsa), std::move(imposed.minima), std::move(report), std::move(sp), in,
                    pair_generation_rate(in)};
}

}  // namespace tfm
