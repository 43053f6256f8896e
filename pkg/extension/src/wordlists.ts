// Word lists driving consent detection and policy-link harvesting.
// Both are user-editable on the options page; these are the shipped
// defaults. Matching is plain lowercase substring search, so entries
// must be lowercase and non-empty.

export const DEFAULT_CHECK_WORDS: readonly string[] = [
  "agree",
  "i agree",
  "accept",
  "consent",
  "terms of service",
  "terms and conditions",
  "privacy policy",
];

export const DEFAULT_RELEVANT_WORDS: readonly string[] = [
  "privacy",
  "terms",
  "policy",
  "legal",
  "tos",
  "conditions",
];

/** Lowercase, trim and dedupe a user-supplied list; fall back to the
 * defaults when nothing usable remains. */
export function normalizeWordList(
  words: readonly string[],
  fallback: readonly string[],
): string[] {
  const seen = new Set<string>();
  const out: string[] = [];
  for (const word of words) {
    const normalized = word.trim().toLowerCase();
    if (normalized.length === 0 || seen.has(normalized)) continue;
    seen.add(normalized);
    out.push(normalized);
  }
  return out.length > 0 ? out : [...fallback];
}
