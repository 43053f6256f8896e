// Popup rendering and the analyze flow. renderPopup is a pure
// state -> DOM projection; runAnalysis drives the
// processing -> processed / error transitions around a service call.
// All text lands via textContent, never innerHTML, so scraped policy
// text cannot inject markup into the popup.

import {
  type AnalyzeDocument,
  type FetchLike,
  type SiteReport,
  requestAnalysis,
} from "./api.js";
import {
  type PopupState,
  assertValid,
  failed,
  processed,
  processing,
} from "./state.js";

const COUNT_CLASSES = ["good", "neutral", "bad", "blocker"] as const;

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderReport(root: HTMLElement, report: SiteReport): void {
  // Overall grade: a single-letter badge, colored by class.
  const badge = el("span", `grade-badge grade-${report.grade.toLowerCase()}`, report.grade);
  root.appendChild(badge);

  // Score line plus the four per-class counts.
  root.appendChild(el("p", "score", `score ${report.score}`));
  const counts = el("div", "counts");
  for (const name of COUNT_CLASSES) {
    counts.appendChild(el("span", `count count-${name}`, `${name} ${report.counts[name]}`));
  }
  root.appendChild(counts);

  if (report.degraded) {
    root.appendChild(el("p", "degraded-note", "summarizer degraded: builtin fallback used"));
  }

  // Per-paragraph summaries with their labels.
  if (report.items.length === 0) {
    root.appendChild(el("p", "empty-note", "no paragraphs were classified"));
    return;
  }
  const list = el("ul", "items");
  for (const item of report.items) {
    const entry = el("li", "item");
    entry.appendChild(el("span", `item-label label-${item.label}`, item.label));
    entry.appendChild(el("span", "item-summary", item.summary));
    list.appendChild(entry);
  }
  root.appendChild(list);
}

export function renderPopup(root: HTMLElement, state: PopupState): void {
  assertValid(state);
  root.replaceChildren();
  root.dataset["phase"] = state.phase;
  switch (state.phase) {
    case "idle":
      root.appendChild(el("p", "status", "no consent request detected on this page"));
      break;
    case "warning_shown": {
      root.appendChild(el("p", "warning", "this page asks for your agreement"));
      const button = el("button", "analyze-button", "analyze policies");
      button.setAttribute("data-action", "analyze");
      root.appendChild(button);
      break;
    }
    case "processing":
      root.appendChild(el("p", "status", "analyzing policies..."));
      break;
    case "processed":
      renderReport(root, state.report as SiteReport);
      break;
    case "error": {
      root.appendChild(el("p", "error-message", state.message ?? "analysis failed"));
      const retry = el("button", "retry-button", "retry");
      retry.setAttribute("data-action", "retry");
      root.appendChild(retry);
      break;
    }
  }
}

export interface AnalysisDeps {
  root: HTMLElement;
  endpoint: string;
  pageUrl: string;
  documents: AnalyzeDocument[];
  fetchImpl?: FetchLike;
  onState?: (state: PopupState) => void;
}

/** Render "processing", post the documents, then render either the
 * report or the error. Returns the final state. */
export async function runAnalysis(deps: AnalysisDeps): Promise<PopupState> {
  const apply = (state: PopupState): PopupState => {
    renderPopup(deps.root, state);
    deps.onState?.(state);
    return state;
  };

  apply(processing());
  try {
    const report = await requestAnalysis(
      deps.endpoint,
      { url: deps.pageUrl, documents: deps.documents },
      deps.fetchImpl ?? fetch,
    );
    return apply(processed(report));
  } catch (err) {
    return apply(failed(err instanceof Error ? err.message : String(err)));
  }
}
