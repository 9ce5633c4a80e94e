"""Streamlit web interface for linepatrol - inspection plan viewer"""
import json
import sys
from pathlib import Path

import pandas as pd
import streamlit as st
from pydantic import ValidationError

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.config.constants import DEFAULT_TARGET_TOURS, Topology
from src.core.generator import synthetic_instance
from src.core.planner import InspectionPlanner, build_grasp_config
from src.exceptions import PlannerError
from src.formats.instance_io import dump_instance, parse_instance
from src.formats.render import render_geojson, render_svg
from src.formats.solution_io import dump_solution
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

# Initialize session state
if 'instance' not in st.session_state:
    st.session_state.instance = None
if 'report' not in st.session_state:
    st.session_state.report = None


def load_uploaded_instance(uploaded) -> None:
    """Parse an uploaded Instance JSON into the session."""
    try:
        st.session_state.instance = parse_instance(uploaded.getvalue().decode("utf-8"))
        st.session_state.report = None
    except (ValidationError, UnicodeDecodeError) as e:
        logger.error(f"Rejected uploaded instance: {e}")
        st.error(f"Not a valid instance document: {e}")


st.set_page_config(
    page_title="linepatrol - Inspection Planner",
    layout="wide",
    initial_sidebar_state="expanded"
)

st.markdown("## linepatrol")
st.markdown("Multi-tour UAV inspection plans for power line segments.")
st.markdown("---")

# Sidebar
with st.sidebar:
    st.markdown("### Instance")
    source = st.radio("Source", ["Upload JSON", "Synthetic"], horizontal=True)

    if source == "Upload JSON":
        uploaded = st.file_uploader("Instance JSON", type=["json"])
        if uploaded is not None and st.button("Load instance", use_container_width=True):
            load_uploaded_instance(uploaded)
    else:
        n_segments = st.number_input("Segments", min_value=1, max_value=500, value=12)
        topology = st.selectbox("Topology", [t.value for t in Topology])
        synthetic_seed = st.number_input("Instance seed", min_value=0, value=0)
        target_tours = st.number_input("Target tours", min_value=1, value=DEFAULT_TARGET_TOURS)
        if st.button("Generate instance", use_container_width=True):
            st.session_state.instance = synthetic_instance(
                int(n_segments),
                topology=Topology(topology),
                seed=int(synthetic_seed),
                target_tours=int(target_tours),
            )
            st.session_state.report = None

    st.markdown("### Solver")
    trials = st.number_input("Trials", min_value=1, max_value=200, value=10)
    seed = st.number_input("Seed", min_value=0, value=1)
    stop_after = st.number_input("Stop after (non-improving iterations)", min_value=1, value=50)
    local_search = st.checkbox("Tabu search", value=True)

instance = st.session_state.instance
if instance is None:
    st.info("Load or generate an instance to start.")
    st.stop()

planner = InspectionPlanner(instance)

st.markdown("### Instance summary")
summary = planner.summary()
cols = st.columns(4)
cols[0].metric("Segments", summary["n_segments"])
cols[1].metric("Budget c_max (s)", f"{summary['c_max']:.1f}")
cols[2].metric("Total length (m)", f"{summary['total_length']:.0f}")
cols[3].metric("Tour lower bound", summary["n_t_lower_bound"])

if st.button("Solve", type="primary"):
    try:
        config = build_grasp_config({
            "trials": int(trials),
            "seed": int(seed),
            "stop_after": int(stop_after),
            "local_search": local_search,
        })
        with st.spinner("Running GRASP..."):
            st.session_state.report = planner.solve(config, jobs=1)
    except (PlannerError, ValidationError) as e:
        logger.error(f"Solve failed: {e}")
        st.error(str(e))

report = st.session_state.report
if report is None:
    st.stop()

st.markdown("---")
if report.best is None:
    st.error(f"No feasible plan found with up to {report.n_t} tours.")
    st.stop()

st.success(f"{report.best.n_tours} tour(s), total {report.best.total_cost:.1f} s")
cols = st.columns(4)
cols[0].metric("Best cost (s)", f"{report.best_cost:.1f}")
cols[1].metric("Mean cost (s)", f"{report.mean_cost:.1f}")
cols[2].metric("Success rate", f"{report.success_rate:.0f}%")
cols[3].metric("Total time (s)", f"{report.total_time:.2f}")

plot_tab, tours_tab, download_tab = st.tabs(["Plan", "Tours", "Download"])

with plot_tab:
    st.image(render_svg(instance, report.best))

with tours_tab:
    st.dataframe(pd.DataFrame([
        {
            "tour": k,
            "segments": " ".join(f"{v.segment_id}{v.direction.value}" for v in tour.visits),
            "cost (s)": round(tour.cached_cost, 3),
            "budget use (%)": round(100.0 * tour.cached_cost / instance.c_max, 1),
        }
        for k, tour in enumerate(report.best.tours)
    ]), use_container_width=True)
    with st.expander("Escalation", expanded=False):
        st.json(report.summary()["escalation"])

with download_tab:
    name = instance.name or "plan"
    st.download_button("Solution JSON", dump_solution(report.best, instance), file_name=f"{name}.sol.json",
                       mime="application/json")
    st.download_button("Instance JSON", dump_instance(instance), file_name=f"{name}.json",
                       mime="application/json")
    st.download_button("GeoJSON", json.dumps(render_geojson(instance, report.best), indent=1),
                       file_name=f"{name}.geojson", mime="application/geo+json")
