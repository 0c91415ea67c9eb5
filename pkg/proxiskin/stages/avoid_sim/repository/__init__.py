from proxiskin.stages.avoid_sim.repository.scenario import ScenarioRepository

__all__ = ["ScenarioRepository"]
