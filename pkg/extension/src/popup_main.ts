// Popup entry point. Asks the content script for the active tab's
// paragraphs and anchors, harvests policy links, scrapes each linked
// page, and feeds everything through runAnalysis. Analysis starts on
// the user's click unless the auto-analyze setting is on, and a
// response that arrives after the tab navigated away is discarded
// rather than shown for the wrong page.

import type { AnalyzeDocument } from "./api.js";
import { collectRelevantLinks } from "./detect.js";
import { renderPopup, runAnalysis } from "./popup.js";
import { scrapeParagraphs } from "./scrape.js";
import { loadSettings } from "./settings.js";
import { failed, idle, warningShown } from "./state.js";

const MAX_LINKED_PAGES = 5;

interface ScrapeReply {
  url: string;
  paragraphs: string[];
  links: string[];
}

async function activeTab(): Promise<chrome.tabs.Tab | undefined> {
  const [tab] = await chrome.tabs.query({ active: true, currentWindow: true });
  return tab;
}

async function scrapeLinkedPage(url: string): Promise<AnalyzeDocument> {
  const response = await fetch(url, { credentials: "omit" });
  if (!response.ok) throw new Error(`HTTP ${response.status}`);
  const doc = new DOMParser().parseFromString(await response.text(), "text/html");
  return { source: url, kind: "unknown", paragraphs: scrapeParagraphs(doc) };
}

async function main(): Promise<void> {
  const root = document.getElementById("root");
  const sources = document.getElementById("sources");
  if (!root || !sources) return;

  const settings = await loadSettings();
  const tab = await activeTab();
  if (!tab || typeof tab.id !== "number" || !tab.url) {
    renderPopup(root, idle());
    return;
  }
  const tabId = tab.id;
  const analyzedUrl = tab.url;

  let reply: ScrapeReply;
  try {
    reply = (await chrome.tabs.sendMessage(tabId, { type: "scrape-page" })) as ScrapeReply;
  } catch {
    renderPopup(root, idle());
    return;
  }
  if (!reply || !Array.isArray(reply.paragraphs)) {
    renderPopup(root, idle());
    return;
  }

  const analyze = async (): Promise<void> => {
    sources.replaceChildren();

    const documents: AnalyzeDocument[] = [];
    if (reply.paragraphs.length > 0) {
      documents.push({ source: analyzedUrl, kind: "unknown", paragraphs: reply.paragraphs });
    }

    const links = collectRelevantLinks(reply.links ?? [], settings.relevantWords)
      .filter((link) => link !== analyzedUrl)
      .slice(0, MAX_LINKED_PAGES);
    const settled = await Promise.allSettled(links.map(scrapeLinkedPage));
    settled.forEach((result, i) => {
      if (result.status === "fulfilled" && result.value.paragraphs.length > 0) {
        documents.push(result.value);
      } else {
        // Dead or empty link: record the failed source, keep going.
        const note = document.createElement("p");
        note.className = "failed-source";
        note.textContent = `could not read ${links[i] ?? "a policy link"}`;
        sources.appendChild(note);
      }
    });

    if (documents.length === 0) {
      renderPopup(root, failed("no text found on this page or its policy links"));
      return;
    }

    await runAnalysis({
      root,
      endpoint: settings.endpoint,
      pageUrl: analyzedUrl,
      documents,
    });

    // Discard a verdict for a page the user already left.
    const current = await activeTab();
    if (current?.url !== analyzedUrl) {
      renderPopup(root, idle());
      sources.replaceChildren();
    }
  };

  renderPopup(root, warningShown());
  root.addEventListener("click", (event) => {
    const action = (event.target as HTMLElement).getAttribute("data-action");
    if (action === "analyze" || action === "retry") void analyze();
  });
  if (settings.autoAnalyze) void analyze();
}

void main();
