from . import Config,Algebra,System,Reduction,Assignment,Solvents

__version__="1.0.0"
