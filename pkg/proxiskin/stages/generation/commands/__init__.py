from proxiskin.stages.generation.commands.generate import cmd_generate, load_base_mesh

__all__ = ["cmd_generate", "load_base_mesh"]
