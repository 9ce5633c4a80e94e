"""linepatrol: multi-tour UAV inspection planning for power line segments"""

__version__ = "0.1.0"
