// Content script. Two jobs, both gated on consent detection:
//  1. On load, run checkPage over the page text; only if it fires,
//     tell the background to show the badge. Pages without a consent
//     prompt cause no messages and no network activity at all.
//  2. Answer "scrape-page" requests from the popup with this page's
//     paragraphs and anchor hrefs.

import { checkPage } from "./detect.js";
import { collectAnchorHrefs, scrapeParagraphs } from "./scrape.js";
import { loadSettings } from "./settings.js";

function pageText(): string {
  return document.body?.innerText ?? "";
}

chrome.runtime.onMessage.addListener((message, _sender, sendResponse) => {
  const request = message as { type?: string } | null;
  if (request?.type === "scrape-page") {
    sendResponse({
      url: location.href,
      paragraphs: scrapeParagraphs(document),
      links: collectAnchorHrefs(document),
    });
  }
  return undefined;
});

void (async () => {
  const settings = await loadSettings();
  if (checkPage(pageText(), settings.checkWords)) {
    await chrome.runtime.sendMessage({ type: "consent-detected", url: location.href });
  }
})();
