// Consent-page detection and policy-link harvesting.
//
// Both functions use whole-string `includes` on lowercased input —
// deliberately so: "disagree" matches "agree" and a photo-gallery URL
// matches "tos". That looseness is the contract; callers wanting
// precision should tune the word lists, not this code.

/** True iff any check word occurs as a substring of the lowercased
 * page text. Empty text never matches. */
export function checkPage(pageText: string, checkWords: readonly string[]): boolean {
  if (!pageText) return false;
  const text = pageText.toLowerCase();
  return checkWords.some((word) => word.length > 0 && text.includes(word));
}

/** Links whose lowercased URL contains any relevant word. Each link
 * appears at most once (exact-string dedup), original order kept. */
export function collectRelevantLinks(
  allLinks: readonly string[],
  relevantWords: readonly string[],
): string[] {
  const seen = new Set<string>();
  const links: string[] = [];
  for (const link of allLinks) {
    if (seen.has(link)) continue;
    const lowered = link.toLowerCase();
    if (relevantWords.some((word) => word.length > 0 && lowered.includes(word))) {
      seen.add(link);
      links.push(link);
    }
  }
  return links;
}
