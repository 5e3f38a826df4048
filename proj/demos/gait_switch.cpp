// Hexapod switching from a tripod gait to a wave gait mid-run, then printing
// the Hildebrand diagram and how many steps the wave gait needed to settle.

#include <iostream>

#include "tropgait/tropgait.hpp"

int main() {
    using namespace tropgait;

    const GaitParams params{1.0, 2.0, 1.0};
    SimulationPlan plan;
    plan.segments.push_back({parse_gait_dsl("{1,4,5}<{2,3,6}"), params, 4});
    plan.segments.push_back({parse_gait_dsl("{1}<{2}<{3}<{4}<{5}<{6}"), params, 6});

    const Trajectory traj = simulate(plan, initial_state(plan));
    std::cout << render_diagram(extract_schedule(traj), 0.5) << "\n";

    const Segment& wave = plan.segments[1];
    const std::size_t start = plan.segment_start(1);
    const auto steady = detect_steady_state(std::span(traj).subspan(start, wave.steps + 1),
                                            closed_form_eigenpair(wave.gait, wave.params).lambda);
    std::cout << "wave gait on its eigenray after " << (steady ? std::to_string(*steady) : "never") << " step(s)\n";
}
