// The popup state machine's single invariant: report present iff
// phase is "processed".

import { describe, expect, it } from "vitest";

import type { SiteReport } from "../src/api.js";
import {
  assertValid,
  failed,
  idle,
  processed,
  processing,
  warningShown,
} from "../src/state.js";

const REPORT: SiteReport = {
  counts: { good: 1, neutral: 0, bad: 1, blocker: 0, total: 2 },
  score: 0,
  grade: "C",
  degraded: false,
  items: [],
};

describe("popup state constructors", () => {
  it("cover the five phases", () => {
    expect(idle().phase).toBe("idle");
    expect(warningShown().phase).toBe("warning_shown");
    expect(processing().phase).toBe("processing");
    expect(processed(REPORT).phase).toBe("processed");
    expect(failed("boom").phase).toBe("error");
  });

  it("attach the report only to processed", () => {
    expect(processed(REPORT).report).toBe(REPORT);
    for (const state of [idle(), warningShown(), processing(), failed("x")]) {
      expect(state.report).toBeUndefined();
    }
  });

  it("carry the error message on error", () => {
    expect(failed("service down").message).toBe("service down");
  });
});

describe("assertValid", () => {
  it("accepts every constructor output", () => {
    for (const state of [idle(), warningShown(), processing(), processed(REPORT), failed("x")]) {
      expect(assertValid(state)).toBe(state);
    }
  });

  it("rejects processed without a report", () => {
    expect(() => assertValid({ phase: "processed" })).toThrow(/requires a report/);
  });

  it("rejects a report outside processed", () => {
    for (const phase of ["idle", "warning_shown", "processing", "error"] as const) {
      expect(() => assertValid({ phase, report: REPORT })).toThrow(/must not carry/);
    }
  });
});
