"""Event-driven simulation of FIFO lines, used as the ground-truth oracle.

The simulator keeps explicit server, buffer and customer state and advances
a time-ordered event queue; it never evaluates the max-plus recursions.
Customers that finish service while the next station is full stay on their
server (manufacturing blocking) and move the instant a slot frees.
"""
import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .errors import InputError
from .trace import DepartureTrace

ARRIVE, START, COMPLETE, BLOCK, DEPART = "arrive", "start", "complete", "block", "depart"


@dataclass(eq=False)
class EventLog:
    """Per-(server, service index) timestamps plus the raw event stream.

    Arrays have one row per stage (row 0 is the arrival stage for open
    systems, server 1 for closed ones) and one column per service index.
    ``customer[r, k - 1]`` identifies who received the ``k``-th service.
    """

    first_server: int
    arrival: np.ndarray
    start: np.ndarray
    completion: np.ndarray
    departure: np.ndarray
    customer: np.ndarray
    events: List[Tuple[float, int, int, str]] = field(default_factory=list)

    @property
    def K(self):
        return self.departure.shape[1]

    def dump(self, fh):
        fh.write("time,server,customer,kind\n")
        for t, i, x, kind in self.events:
            fh.write(f"{t!r},{i},{x},{kind}\n")


class _Station:
    __slots__ = ("queue", "serving", "blocked", "served", "arrived", "capacity")

    def __init__(self, capacity):
        self.queue = deque()
        self.serving = None  # (customer, service index) while on the server
        self.blocked = False
        self.served = 0
        self.arrived = 0
        self.capacity = capacity  # waiting room + server; None means unlimited

    def occupancy(self):
        return len(self.queue) + (self.serving is not None)

    def has_room(self):
        return self.capacity is None or self.occupancy() < self.capacity


class _LineSimulator:
    def __init__(self, spec, profile, K):
        self.spec = spec
        self.tau = profile.tau
        self.K = K
        self.n = spec.n
        self.open = spec.is_open
        self.offset = spec.first_server
        caps = [None] * (self.n + 1)
        if spec.kind == "tandem_finite":
            for i, b in enumerate(spec.buffers, start=2):
                caps[i] = b + 1
        self.stations = [None] + [_Station(caps[i]) for i in range(1, self.n + 1)]
        shape = (spec.stages, K)
        self.log = EventLog(
            first_server=self.offset,
            arrival=np.full(shape, np.nan),
            start=np.full(shape, np.nan),
            completion=np.full(shape, np.nan),
            departure=np.full(shape, np.nan),
            customer=np.full(shape, -1, dtype=np.int64),
        )
        self.heap = []
        self.seq = 0
        self.in_system = 0

    # event queue: ties broken upstream-first, then by service index
    def schedule(self, t, server, index, kind):
        heapq.heappush(self.heap, (t, server, index, self.seq, kind))
        self.seq += 1

    def note(self, t, server, who, kind):
        self.log.events.append((t, server, who, kind))

    def row(self, server):
        return server - self.offset

    def run(self):
        if self.open:
            if self.K:
                self.schedule(float(self.tau[0, 0]), 0, 1, ARRIVE)
        else:
            for token in range(self.spec.c):
                self.enter(1, token, 0.0)
                self.in_system += 1
            self.start_next(1, 0.0)
        while self.heap:
            t, server, index, _, kind = heapq.heappop(self.heap)
            if kind == ARRIVE:
                self.on_source(t, index)
            else:
                self.on_completion(t, server)
            if not self.open:
                assert self.in_system == self.spec.c, "closed loop lost or gained a customer"
        return self.log

    def on_source(self, t, k):
        r = self.row(0)
        for arr in (self.log.arrival, self.log.start, self.log.completion, self.log.departure):
            arr[r, k - 1] = t
        self.log.customer[r, k - 1] = k
        self.note(t, 0, k, ARRIVE)
        self.in_system += 1
        self.enter(1, k, t)
        self.start_next(1, t)
        if k < self.K:
            self.schedule(t + float(self.tau[0, k]), 0, k + 1, ARRIVE)

    def enter(self, i, who, t):
        st = self.stations[i]
        st.arrived += 1
        if st.arrived <= self.K:
            self.log.arrival[self.row(i), st.arrived - 1] = t
        st.queue.append(who)
        assert st.capacity is None or st.occupancy() <= st.capacity, "buffer overflow"
        if i > 1 or not self.open:
            self.note(t, i, who, ARRIVE)

    def start_next(self, i, t):
        st = self.stations[i]
        if st.serving is not None or not st.queue or st.served >= self.K:
            return
        who = st.queue.popleft()
        st.served += 1
        s = st.served
        r = self.row(i)
        prev_free = self.log.departure[r, s - 2] if s > 1 else 0.0
        assert t >= self.log.arrival[r, s - 1] and t >= prev_free
        st.serving = (who, s)
        self.log.start[r, s - 1] = t
        self.log.customer[r, s - 1] = who
        self.note(t, i, who, START)
        self.schedule(t + float(self.tau[r, s - 1]), i, s, COMPLETE)

    def on_completion(self, t, i):
        st = self.stations[i]
        who, s = st.serving
        self.log.completion[self.row(i), s - 1] = t
        self.note(t, i, who, COMPLETE)
        self.release(i, t)

    def release(self, i, t):
        """Move the finished customer off server ``i`` if the next station has room."""
        st = self.stations[i]
        who, s = st.serving
        if i == self.n:
            dest = None if self.open else 1
        else:
            dest = i + 1
        if dest is not None and dest != 1 and not self.stations[dest].has_room():
            if not st.blocked:
                st.blocked = True
                self.note(t, i, who, BLOCK)
            return
        st.blocked = False
        st.serving = None
        self.log.departure[self.row(i), s - 1] = t
        self.note(t, i, who, DEPART)
        if dest is None:
            self.in_system -= 1
        else:
            self.enter(dest, who, t)
            self.start_next(dest, t)
        self.start_next(i, t)
        # the slot just vacated at station i may unblock the server upstream
        if i > 1 and self.stations[i - 1].blocked:
            self.release(i - 1, t)


def simulate(spec, profile, K=None):
    """Run the line described by ``spec`` for ``K`` customers (services per server)."""
    profile.check_against(spec)
    if K is None:
        K = profile.K
    if not isinstance(K, (int, np.integer)) or K < 0 or K > profile.K:
        raise InputError(f"horizon K={K} outside 0..{profile.K}", field="horizon")
    return _LineSimulator(spec, profile, int(K)).run()


def departures(log):
    """Project an :class:`EventLog` onto the trace shape of the recursions."""
    return DepartureTrace(log.departure.copy(), log.first_server)
