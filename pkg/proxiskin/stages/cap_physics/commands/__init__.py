from proxiskin.stages.cap_physics.commands.simulate import cmd_simulate

__all__ = ["cmd_simulate"]
