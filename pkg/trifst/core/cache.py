"""
In-memory cache for frozen machines shared between computations
"""
import threading
from typing import Any, Callable, Dict, Hashable, Optional

from loguru import logger

from .transducer import Transducer


class MachineCache:
    """Keyed store of frozen transducers"""

    def __init__(self, max_entries: Optional[int] = None):
        """
        Initialize machine cache

        Args:
            max_entries: Oldest entries are evicted beyond this size (None = unbounded)
        """
        self.max_entries = max_entries
        self._entries: Dict[Hashable, Transducer] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Transducer]:
        with self._lock:
            machine = self._entries.get(key)
            if machine is None:
                self.misses += 1
            else:
                self.hits += 1
            return machine

    def set(self, key: Hashable, machine: Transducer) -> Transducer:
        """Freeze and store a machine, returning the stored instance"""
        machine.freeze()
        with self._lock:
            self._entries[key] = machine
            if self.max_entries is not None:
                while len(self._entries) > self.max_entries:
                    oldest = next(iter(self._entries))
                    del self._entries[oldest]
                    logger.debug(f"Machine cache evicted {oldest}")
        return machine

    def get_or_build(self, key: Hashable, build: Callable[[], Transducer]) -> Transducer:
        """
        Cached machine for `key`, building it on a miss

        Args:
            key: Cache key
            build: Zero-argument factory

        Returns:
            Frozen machine
        """
        machine = self.get(key)
        if machine is not None:
            logger.debug(f"Machine cache hit: {key}")
            return machine
        logger.debug(f"Machine cache miss: {key}")
        return self.set(key, build())

    def delete(self, key: Hashable) -> bool:
        with self._lock:
            return self._entries.pop(key, None) is not None

    def clear(self):
        with self._lock:
            self._entries.clear()
            self.hits = self.misses = 0

    def stats(self) -> Dict[str, Any]:
        return {"entries": len(self._entries), "hits": self.hits, "misses": self.misses}

    def __contains__(self, key: Hashable) -> bool:
        return key in self._entries

    def __len__(self):
        return len(self._entries)
