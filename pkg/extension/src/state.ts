// Popup state machine. One invariant matters: a report is present iff
// the phase is "processed". The constructors below are the only way
// states are built, and assertValid re-checks the invariant wherever a
// state crosses a boundary (render, message passing).

import type { SiteReport } from "./api.js";

export type Phase = "idle" | "warning_shown" | "processing" | "processed" | "error";

export interface PopupState {
  readonly phase: Phase;
  readonly report?: SiteReport;
  readonly message?: string;
}

export const idle = (): PopupState => ({ phase: "idle" });

export const warningShown = (): PopupState => ({ phase: "warning_shown" });

export const processing = (): PopupState => ({ phase: "processing" });

export const processed = (report: SiteReport): PopupState => ({
  phase: "processed",
  report,
});

export const failed = (message: string): PopupState => ({
  phase: "error",
  message,
});

export function assertValid(state: PopupState): PopupState {
  if (state.phase === "processed" && state.report === undefined) {
    throw new Error("processed state requires a report");
  }
  if (state.phase !== "processed" && state.report !== undefined) {
    throw new Error(`${state.phase} state must not carry a report`);
  }
  return state;
}
