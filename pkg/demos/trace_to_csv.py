"""Export a full event trace for plotting or inspection."""

import io

from bikerelay import parse_scheme, simulate, write_trace_csv

BROKEN = parse_scheme(
    "6 6\n"
    + "1 1 0 1 0 0\n" * 3
    + "0 0 1 0 1 1\n" * 3
)

if __name__ == "__main__":
    trace = simulate(BROKEN)
    out = io.StringIO()
    write_trace_csv(trace, out)
    print(out.getvalue())
    print(f"# {len(trace.handover_events)} handovers, {len(trace.stall_events)} stalls,")
    print(f"# makespan {trace.makespan}; times are exact fractions p/q.")
