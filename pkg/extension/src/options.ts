// Options page: service endpoint, both word lists (one entry per
// line) and the auto-analyze toggle, persisted via chrome.storage.

import { DEFAULT_SETTINGS, loadSettings, saveSettings } from "./settings.js";
import {
  DEFAULT_CHECK_WORDS,
  DEFAULT_RELEVANT_WORDS,
  normalizeWordList,
} from "./wordlists.js";

function lines(value: string): string[] {
  return value.split(/\n+/).map((s) => s.trim()).filter(Boolean);
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`options page is missing #${id}`);
  return node as T;
}

async function init(): Promise<void> {
  const endpoint = byId<HTMLInputElement>("endpoint");
  const checkWords = byId<HTMLTextAreaElement>("check-words");
  const relevantWords = byId<HTMLTextAreaElement>("relevant-words");
  const autoAnalyze = byId<HTMLInputElement>("auto-analyze");
  const save = byId<HTMLButtonElement>("save");
  const reset = byId<HTMLButtonElement>("reset");
  const status = byId<HTMLElement>("status");

  const write = (settings: typeof DEFAULT_SETTINGS): void => {
    endpoint.value = settings.endpoint;
    checkWords.value = settings.checkWords.join("\n");
    relevantWords.value = settings.relevantWords.join("\n");
    autoAnalyze.checked = settings.autoAnalyze;
  };

  write(await loadSettings());

  save.addEventListener("click", () => {
    void saveSettings({
      endpoint: endpoint.value.trim() || DEFAULT_SETTINGS.endpoint,
      checkWords: normalizeWordList(lines(checkWords.value), DEFAULT_CHECK_WORDS),
      relevantWords: normalizeWordList(lines(relevantWords.value), DEFAULT_RELEVANT_WORDS),
      autoAnalyze: autoAnalyze.checked,
    }).then(() => {
      status.textContent = "saved";
      setTimeout(() => {
        status.textContent = "";
      }, 1000);
    });
  });

  reset.addEventListener("click", () => {
    void saveSettings({ ...DEFAULT_SETTINGS }).then(() => write(DEFAULT_SETTINGS));
  });
}

document.addEventListener("DOMContentLoaded", () => void init());
