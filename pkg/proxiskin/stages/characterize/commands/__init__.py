from proxiskin.stages.characterize.commands.characterize import cmd_characterize

__all__ = ["cmd_characterize"]
