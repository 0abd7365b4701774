"""
State Transition Algorithm Explorer

A Streamlit app for running the optimizer on the benchmark problems,
watching convergence and comparing with published results.

    streamlit run app.py
"""

import logging
import os

import numpy as np
import pandas as pd
import streamlit as st

from benchmarks import benchmark_frame, benchmark_names, get_benchmark, landscape
from cli import axesion_cloud, run_summary
from errors import StaError
from harness import reference_frame
from sta_core import DEFAULT_EPOCHS, RunConfig, StaVariant, run
from transforms import DEFAULT_SE, TransformParams

logger = logging.getLogger(__name__)
logging.basicConfig(level=os.environ.get("STA_LOG_LEVEL", "WARNING").upper())

# Page config
st.set_page_config(
    page_title="State Transition Algorithm Explorer",
    layout="wide"
)

DEFAULT_SEED = int(os.environ.get("STA_SEED", "42"))

# Initialize session state
if "last_result" not in st.session_state:
    st.session_state.last_result = None


@st.cache_data(show_spinner=False)
def cached_run(name: str, variant: str, epochs: int, seed: int, se: int) -> tuple[pd.DataFrame, dict]:
    """One seeded run; identical settings reuse the earlier result."""
    params = TransformParams.for_variant(variant, se=se)
    result = run(RunConfig(variant=variant, params=params, epochs=epochs, seed=seed), get_benchmark(name))
    return result.trace_frame(), run_summary(result, epochs)


@st.cache_data(show_spinner=False)
def cached_landscape(name: str, points: int) -> pd.DataFrame:
    return landscape(get_benchmark(name), points)


def run_tab(name: str, variant: str, epochs: int, seed: int, se: int):
    st.subheader(f"{name} with STA({variant})")
    if st.button("Run", type="primary"):
        with st.spinner("Optimizing..."):
            try:
                st.session_state.last_result = (name, variant, *cached_run(name, variant, epochs, seed, se))
            except StaError as e:
                st.error(str(e))
                return

    if not st.session_state.last_result:
        st.info("Pick a problem in the sidebar and press Run.")
        return

    run_name, run_variant, trace, summary = st.session_state.last_result
    if (run_name, run_variant) != (name, variant):
        st.caption(f"Showing the last run ({run_name}, {run_variant}).")

    col1, col2, col3 = st.columns(3)
    col1.metric("Best f", f"{summary['best_f']:.6g}")
    col2.metric("Evaluations", f"{summary['evaluations']:,}")
    col3.metric("Theoretical best", f"{get_benchmark(run_name).theoretical_best:.10g}")

    # log-scale gap is easier to read than raw f for residual problems
    gap = trace["best_f"] - get_benchmark(run_name).theoretical_best
    chart = trace.set_index("epoch")
    if (gap > 0).all():
        chart = chart.assign(log10_gap=np.log10(gap.to_numpy()))
        st.line_chart(chart["log10_gap"])
    else:
        st.line_chart(chart["best_f"])

    st.markdown("**Best point**")
    st.code(", ".join(f"{v:.10g}" for v in summary["best_x"]))


def axesion_tab(seed: int):
    st.subheader("Axesion moves")
    st.caption("Each candidate changes one randomly chosen coordinate, so the cloud sits on the axis lines through x.")
    col1, col2 = st.columns(2)
    x_text = col1.text_input("Starting point", value="1,1,1")
    delta = col2.number_input("delta", min_value=0.0, value=1.0, step=0.1)
    samples = st.slider("Samples", 100, 5000, 1000, step=100)
    try:
        x = [float(v) for v in x_text.split(",") if v.strip()]
        cloud = axesion_cloud(x, delta, samples, seed)
    except (ValueError, StaError) as e:
        st.error(f"Invalid input: {e}")
        return
    if cloud.shape[1] >= 2:
        st.scatter_chart(cloud, x="x1", y="x2")
    changed = (cloud.to_numpy() != np.asarray(x)).sum(axis=0)
    st.dataframe(pd.DataFrame({"coordinate": cloud.columns, "moved": changed}), hide_index=True)


def landscape_tab(name: str):
    bench = get_benchmark(name)
    st.subheader(f"{name} landscape")
    if bench.dim > 2:
        st.info(f"{name} has {bench.dim} variables; landscapes are drawn for 1-D and 2-D problems.")
        return
    points = st.slider("Grid points per axis", 21, 201, 81, step=20)
    grid = cached_landscape(name, points)
    if bench.dim == 1:
        st.line_chart(grid.set_index("x")["f"])
    else:
        st.scatter_chart(grid, x="x", y="y", color="f")
    if not bench.bounded:
        st.caption("Unbounded problem: drawn over the surrogate box used for initialization.")


def reference_tab(name: str):
    st.subheader(f"Published results for {name}")
    st.dataframe(reference_frame(name), hide_index=True, use_container_width=True)
    with st.expander("All benchmark problems"):
        st.dataframe(benchmark_frame(), hide_index=True, use_container_width=True)


def main():
    """Main app logic."""
    st.title("State Transition Algorithm Explorer")

    # Sidebar
    names = benchmark_names()
    name = st.sidebar.selectbox("Benchmark", options=names, index=names.index("g7"))
    variant = st.sidebar.radio("Variant", options=[v.value for v in StaVariant], index=1, horizontal=True)
    epochs = st.sidebar.number_input("Epochs", min_value=1, max_value=5000, value=min(DEFAULT_EPOCHS, 200))
    seed = st.sidebar.number_input("Seed", min_value=0, value=DEFAULT_SEED)
    se = st.sidebar.number_input("Search enforcement (SE)", min_value=1, max_value=512, value=DEFAULT_SE)

    bench = get_benchmark(name)
    st.sidebar.markdown("---")
    st.sidebar.caption(f"{bench.formula}")
    st.sidebar.caption(f"{bench.bounds_label}, best {bench.theoretical_best:.10g}")

    tab_run, tab_axesion, tab_landscape, tab_reference = st.tabs(["Run", "Axesion", "Landscape", "Reference"])
    with tab_run:
        run_tab(name, variant, int(epochs), int(seed), int(se))
    with tab_axesion:
        axesion_tab(int(seed))
    with tab_landscape:
        landscape_tab(name)
    with tab_reference:
        reference_tab(name)


if __name__ == "__main__":
    main()
