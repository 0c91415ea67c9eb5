from proxiskin.stages.pss_map.commands.map import cmd_map
from proxiskin.stages.pss_map.commands.train import cmd_train, load_dataset

__all__ = ["cmd_map", "cmd_train", "load_dataset"]
