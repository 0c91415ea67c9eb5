from proxiskin.stages.avoid_sim.commands.avoid import cmd_avoid

__all__ = ["cmd_avoid"]
