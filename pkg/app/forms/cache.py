"""
Per-discriminant cache of class data, in memory and on disk.

Readers share the in-memory map; a single writer populates each entry once
under the lock. Disk files live at <dir>/D<value>.json.
"""

import json
import logging
import math
import os
import threading

from app.forms.quadratic import (
    FormCycle,
    FormTriple,
    as_discriminant,
    cycle_from_representative,
    form_cycles,
    fundamental_unit_plus,
)
from app.models import ClassData, UnitData

logger = logging.getLogger(__name__)


def compute_class_data(D) -> ClassData:
    disc = as_discriminant(D)
    cycles = form_cycles(disc)
    unit = fundamental_unit_plus(disc)
    return ClassData(
        D=disc.value,
        h_plus=len(cycles),
        t=unit.t,
        u=unit.u,
        geodesic_length=unit.geodesic_length,
        squarefree=disc.squarefree,
        cycles=[list(cycle.representative.as_tuple()) for cycle in cycles],
    )


class FormCache:
    def __init__(self, directory: str | None = "cache"):
        self.directory = directory
        self._entries: dict[int, ClassData] = {}
        self._lock = threading.Lock()

    def path_for(self, D: int) -> str | None:
        if self.directory is None:
            return None
        return os.path.join(self.directory, f"D{D}.json")

    def get(self, D) -> ClassData:
        key = as_discriminant(D).value
        entry = self._entries.get(key)
        if entry is not None:
            return entry
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                entry = self._load(key) or self._compute_and_store(key)
                self._entries[key] = entry
        return entry

    def cycles(self, D) -> list[FormCycle]:
        data = self.get(D)
        return [cycle_from_representative(FormTriple(*rep)) for rep in data.cycles]

    def unit(self, D) -> UnitData:
        data = self.get(D)
        half = 0.5 * data.geodesic_length
        return UnitData(
            t=data.t,
            u=data.u,
            eps_plus=math.exp(half) if half < 700.0 else math.inf,
            geodesic_length=data.geodesic_length,
        )

    def _load(self, D: int) -> ClassData | None:
        path = self.path_for(D)
        if path is None or not os.path.exists(path):
            return None
        try:
            with open(path, "r") as file:
                entry = ClassData.model_validate(json.load(file))
            logger.info(f"Loaded class data for D={D} from {path}")
            return entry
        except (OSError, ValueError) as e:
            logger.warning(f"Ignoring unreadable cache file {path}: {e}")
            return None

    def _compute_and_store(self, D: int) -> ClassData:
        entry = compute_class_data(D)
        path = self.path_for(D)
        if path is not None:
            os.makedirs(self.directory, exist_ok=True)
            with open(path, "w") as file:
                json.dump(entry.model_dump(), file)
            logger.info(f"Wrote class data for D={D} to {path}")
        return entry
