"""Formats module: Instance/Solution JSON, pylon CSV, route rendering and bench tables"""
from src.formats.instance_io import (
    dump_instance,
    load_instance,
    parse_instance,
    read_pylons,
    read_segment_pairs,
    save_instance,
)
from src.formats.solution_io import (
    dump_solution,
    load_solution,
    save_solution,
    solution_from_dict,
    solution_to_dict,
)
from src.formats.render import render_geojson, render_svg, write_render
from src.formats.bench_io import BenchRow, bench_frame, load_references, write_bench_csv

__all__ = [
    "dump_instance",
    "load_instance",
    "parse_instance",
    "read_pylons",
    "read_segment_pairs",
    "save_instance",
    "dump_solution",
    "load_solution",
    "save_solution",
    "solution_from_dict",
    "solution_to_dict",
    "render_geojson",
    "render_svg",
    "write_render",
    "BenchRow",
    "bench_frame",
    "load_references",
    "write_bench_csv",
]
