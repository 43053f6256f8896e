// Service worker. Keeps interruption minimal: consent detection only
// flips a passive badge on that tab; all scraping and network activity
// happens later, from the popup the user chose to open. The badge is
// cleared whenever the tab navigates or closes, so a stale verdict
// never survives a page change.

chrome.runtime.onMessage.addListener((message, sender, sendResponse) => {
  const request = message as { type?: string } | null;
  const tabId = (sender as { tab?: { id?: number } } | null)?.tab?.id;
  if (request?.type === "consent-detected" && typeof tabId === "number") {
    void chrome.action.setBadgeBackgroundColor({ color: "#c0392b", tabId });
    void chrome.action.setBadgeText({ text: "!", tabId });
    sendResponse({ ok: true });
  }
  return undefined;
});

chrome.tabs.onUpdated.addListener((tabId, changeInfo) => {
  if (changeInfo.url) {
    void chrome.action.setBadgeText({ text: "", tabId });
  }
});

chrome.tabs.onRemoved.addListener(() => {
  // Per-tab badges die with their tab; nothing to clean up.
});
