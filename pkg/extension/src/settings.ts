// Extension settings stored in chrome.storage.sync: the service
// endpoint, both word lists, and whether analysis starts automatically
// on detection or waits for a click.

import { DEFAULT_ENDPOINT } from "./api.js";
import {
  DEFAULT_CHECK_WORDS,
  DEFAULT_RELEVANT_WORDS,
  normalizeWordList,
} from "./wordlists.js";

export interface Settings {
  endpoint: string;
  checkWords: string[];
  relevantWords: string[];
  autoAnalyze: boolean;
}

export const DEFAULT_SETTINGS: Settings = {
  endpoint: DEFAULT_ENDPOINT,
  checkWords: [...DEFAULT_CHECK_WORDS],
  relevantWords: [...DEFAULT_RELEVANT_WORDS],
  autoAnalyze: false,
};

export async function loadSettings(): Promise<Settings> {
  const stored = await chrome.storage.sync.get({ ...DEFAULT_SETTINGS });
  return {
    endpoint:
      typeof stored["endpoint"] === "string" && stored["endpoint"].trim()
        ? (stored["endpoint"] as string).trim()
        : DEFAULT_ENDPOINT,
    checkWords: normalizeWordList(
      Array.isArray(stored["checkWords"]) ? (stored["checkWords"] as string[]) : [],
      DEFAULT_CHECK_WORDS,
    ),
    relevantWords: normalizeWordList(
      Array.isArray(stored["relevantWords"]) ? (stored["relevantWords"] as string[]) : [],
      DEFAULT_RELEVANT_WORDS,
    ),
    autoAnalyze: stored["autoAnalyze"] === true,
  };
}

export async function saveSettings(settings: Settings): Promise<void> {
  await chrome.storage.sync.set({ ...settings });
}
