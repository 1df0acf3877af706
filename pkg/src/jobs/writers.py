"""
Writers - Salidas de los trabajos: CSV de trayectorias, SVG de vista rápida e informes JSON.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd
from lxml import etree

from src.engine.process_spec import PathResult, ProcessSpec
from src.kernels.kernel_spec import LinearMMM

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
CSV_FLOAT_FORMAT = "%.17g"


def write_frame_csv(path: Path, frame: pd.DataFrame) -> Path:
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"💾 Saved {len(frame)} rows to {path}")
    return path


def write_path_csv(path: Path, result: PathResult) -> Path:
    """CSV with header t,value and 17 significant digits"""
    return write_frame_csv(path, result.to_frame())


def read_path_csv(path: Path) -> pd.DataFrame:
    return pd.read_csv(path, float_precision="round_trip")


def param_curves(spec: ProcessSpec, grid: np.ndarray) -> pd.DataFrame:
    """α(t), and h(t) for linear multifractional kernels, on the path grid"""
    columns = {"t": grid, "alpha": np.asarray(spec.alpha.value(grid), dtype=np.float64)}
    if isinstance(spec.kernel, LinearMMM):
        columns["h"] = np.asarray(spec.kernel.h.value(grid), dtype=np.float64)
    return pd.DataFrame(columns)


def zoom_window(result: PathResult, start: float, end: float) -> PathResult:
    inside = (result.grid >= start) & (result.grid <= end)
    return PathResult(
        grid=result.grid[inside],
        values=result.values[inside],
        n_terms=result.n_terms,
        seed=result.seed,
        tail_bound=result.tail_bound[inside],
    )


def _span(values: np.ndarray):
    low, high = float(np.min(values)), float(np.max(values))
    if high == low:
        return low - 0.5, high + 0.5
    return low, high


def write_path_svg(
    path: Path,
    grid: Sequence[float],
    values: Sequence[float],
    title: str = "",
    width: int = 800,
    height: int = 400,
    margin: int = 40,
) -> Path:
    """Quick-look plot: frame, zero line when visible, title and one polyline"""
    grid = np.asarray(grid, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    x_low, x_high = _span(grid)
    y_low, y_high = _span(values)
    plot_w, plot_h = width - 2 * margin, height - 2 * margin

    def sx(t):
        return margin + (t - x_low) / (x_high - x_low) * plot_w

    def sy(v):
        return margin + (y_high - v) / (y_high - y_low) * plot_h

    svg = etree.Element(f"{{{SVG_NS}}}svg", nsmap={None: SVG_NS}, width=str(width), height=str(height),
                        viewBox=f"0 0 {width} {height}")
    etree.SubElement(svg, f"{{{SVG_NS}}}rect", x=str(margin), y=str(margin), width=str(plot_w),
                     height=str(plot_h), fill="none", stroke="#444444")
    if y_low < 0.0 < y_high:
        zero = f"{sy(0.0):.3f}"
        etree.SubElement(svg, f"{{{SVG_NS}}}line", x1=str(margin), y1=zero, x2=str(margin + plot_w), y2=zero,
                         stroke="#bbbbbb")
    label = etree.SubElement(svg, f"{{{SVG_NS}}}text", x=str(margin), y=str(margin - 12),
                             attrib={"font-family": "sans-serif", "font-size": "14"})
    label.text = title
    points = " ".join(f"{sx(t):.3f},{sy(v):.3f}" for t, v in zip(grid, values))
    etree.SubElement(svg, f"{{{SVG_NS}}}polyline", points=points, fill="none", stroke="#1f4e9c",
                     attrib={"stroke-width": "1"})

    Path(path).write_bytes(etree.tostring(svg, pretty_print=True, xml_declaration=True, encoding="UTF-8"))
    logger.info(f"💾 Saved SVG to {path}")
    return path


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    return value


def to_json(data: Dict[str, Any]) -> str:
    """Strict JSON: non-finite floats become null"""
    return json.dumps(_jsonable(data), indent=2, ensure_ascii=False)


def write_json(path: Path, data: Dict[str, Any], encoding: Optional[str] = "utf-8") -> Path:
    Path(path).write_text(to_json(data) + "\n", encoding=encoding)
    logger.info(f"💾 Saved report to {path}")
    return path
