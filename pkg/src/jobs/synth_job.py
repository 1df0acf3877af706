"""
Synth Job - Síntesis de trayectorias con salida CSV/SVG
"""

import logging
from typing import Any, Dict

import numpy as np

from src.engine.series_engine import diagonal_path
from src.jobs.base_job import JobInput, MstabJob
from src.jobs.writers import param_curves, write_frame_csv, write_json, write_path_csv, write_path_svg, zoom_window
from src.sampling.streams import draw_series

logger = logging.getLogger(__name__)


class SynthJob(MstabJob):
    name: str = "PathSynthesizer"
    command: str = "synth"
    description: str = "Synthesize one diagonal path and write CSV/SVG"

    def _svg(self, path, grid, values, title):
        figures = self.settings.get("figures", {})
        return write_path_svg(
            path,
            grid,
            values,
            title=title,
            width=int(figures.get("svg_width", 800)),
            height=int(figures.get("svg_height", 400)),
            margin=int(figures.get("svg_margin", 40)),
        )

    def _run(self, args: JobInput) -> Dict[str, Any]:
        config = args.config
        spec = self.spec_factory.create_process(config.process, config.mc.n_terms, config.seed)
        grid = config.grid.values()
        stem = self.stem(config)
        args.out_dir.mkdir(parents=True, exist_ok=True)

        logger.info(f"🚀 Synthesizing {stem}: {config.process.kernel}, {grid.size} points, seed {config.seed}")
        path = diagonal_path(spec, grid, workers=args.workers)

        files = [write_path_csv(args.out_dir / f"{stem}.csv", path)]
        if config.outputs.svg:
            files.append(self._svg(args.out_dir / f"{stem}.svg", path.grid, path.values, stem))
        if config.outputs.param_curves:
            files.append(write_frame_csv(args.out_dir / f"{stem}_params.csv", param_curves(spec, path.grid)))
        if config.outputs.zoom is not None:
            window = zoom_window(path, *config.outputs.zoom)
            files.append(write_path_csv(args.out_dir / f"{stem}_zoom.csv", window))
            if config.outputs.svg and len(window):
                files.append(self._svg(args.out_dir / f"{stem}_zoom.svg", window.grid, window.values, f"{stem} (zoom)"))
        if config.outputs.draw_dump:
            draw = draw_series(spec.measure, spec.n_terms, spec.seed)
            files.append(write_json(args.out_dir / f"{stem}_draw.json", draw.to_dict()))

        return {
            "status": "success",
            "job": self.command,
            "name": stem,
            "points": len(path),
            "n_terms": path.n_terms,
            "seed": path.seed,
            "max_tail_bound": float(np.max(path.tail_bound)) if len(path) else 0.0,
            "files": [str(f) for f in files],
        }
