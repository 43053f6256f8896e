// Page scraping: paragraph text and anchor hrefs, in document order.
// Runs inside the content script (default strategy: payload injection
// into the already-open page); the same functions work against any
// Document, which is how the tests drive them.

/** Text of each <p> element, document order, blanks dropped. */
export function scrapeParagraphs(doc: Document): string[] {
  const out: string[] = [];
  doc.querySelectorAll("p").forEach((node) => {
    const text = (node.textContent ?? "").trim();
    if (text) out.push(text);
  });
  return out;
}

/** Every anchor's resolved href (Algorithm-style `this.href`),
 * document order, empty hrefs dropped. */
export function collectAnchorHrefs(doc: Document): string[] {
  const out: string[] = [];
  doc.querySelectorAll("a").forEach((node) => {
    const anchor = node as HTMLAnchorElement;
    const href = anchor.href || anchor.getAttribute("href") || "";
    if (href) out.push(href);
  });
  return out;
}
