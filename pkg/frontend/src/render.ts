/** Pure HTML renderers for API payloads.
 *
 * Every score and weight is printed verbatim from the payload
 * (`String(value)`) — the client never recomputes or rescales anything the
 * server sent.  Renderers return strings so they are testable without a DOM.
 */

import type {
  OrganizeResponse,
  RankedResponse,
  ResourceView,
  StatsResponse,
  TermJson,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

function term(t: TermJson): string {
  const cls = `term term-${t.kind}`;
  if (t.kind === "iri") {
    return `<a href="#" class="${cls}" data-iri="${escapeHtml(t.value)}">${escapeHtml(t.value)}</a>`;
  }
  if (t.kind === "blank") {
    return `<span class="${cls}">_:${escapeHtml(t.value)}</span>`;
  }
  const lang = t.lang ? `@${escapeHtml(t.lang)}` : "";
  return `<span class="${cls}">"${escapeHtml(t.value)}"${lang}</span>`;
}

export function renderRanked(payload: RankedResponse, emptyMessage: string): string {
  if (payload.entries.length === 0) {
    return `<p class="empty">${escapeHtml(emptyMessage)}</p>`;
  }
  const items = payload.entries
    .map(
      (entry) =>
        `<li class="ranked-entry">${term(entry.resource)}` +
        `<span class="score">${escapeHtml(String(entry.score))}</span></li>`,
    )
    .join("");
  return `<ol class="ranked">${items}</ol>`;
}

export function renderNews(payload: RankedResponse): string {
  return renderRanked(payload, "nothing new for this concept yet");
}

export function renderConceptList(payload: OrganizeResponse, active?: string): string {
  const concepts = Object.keys(payload.folders);
  if (concepts.length === 0) {
    return `<p class="empty">no concepts yet — tag something first</p>`;
  }
  const items = concepts
    .map((concept) => {
      const cls = concept === active ? "concept active" : "concept";
      return `<li><a href="#" class="${cls}" data-concept="${escapeHtml(concept)}">${escapeHtml(concept)}</a></li>`;
    })
    .join("");
  return `<ul class="concepts">${items}</ul>`;
}

export function renderOrganize(payload: OrganizeResponse): string {
  const concepts = Object.entries(payload.folders);
  if (concepts.length === 0) {
    return `<p class="empty">no tags yet</p>`;
  }
  const folders = concepts
    .map(([concept, entries]) => {
      const rows = entries
        .map(
          (entry) =>
            `<li>${term(entry.resource)}` +
            `<span class="weight">w=${escapeHtml(String(entry.weight))}</span>` +
            `<span class="stamp">${escapeHtml(entry.insertTime)}</span></li>`,
        )
        .join("");
      return `<section class="folder"><h3>${escapeHtml(concept)}</h3><ul>${rows}</ul></section>`;
    })
    .join("");
  return folders;
}

function edgeTable(edges: Record<string, TermJson[]>, heading: string): string {
  const predicates = Object.entries(edges);
  if (predicates.length === 0) return "";
  const rows = predicates
    .map(([predicate, terms]) => {
      const cells = terms.map(term).join(", ");
      return `<tr><th>${escapeHtml(predicate)}</th><td>${cells}</td></tr>`;
    })
    .join("");
  return `<h3>${escapeHtml(heading)}</h3><table class="edges">${rows}</table>`;
}

export function renderResource(view: ResourceView): string {
  const badge = view.abbrev ? `<span class="abbrev">${escapeHtml(view.abbrev)}</span>` : "";
  const types = view.types.map((t) => `<code>${escapeHtml(t)}</code>`).join(" ");
  const abstract = view.abstract
    ? `<p class="abstract">${escapeHtml(view.abstract)}</p>`
    : "";
  const tags =
    view.tags.length === 0
      ? ""
      : `<h3>tags</h3><ul class="tags">` +
        view.tags
          .map(
            (t) =>
              `<li>${term(t.concept)} <span class="weight">w=${escapeHtml(String(t.weight))}</span>` +
              ` by ${term(t.tagger)}</li>`,
          )
          .join("") +
        `</ul>`;
  return (
    `<header class="resource-head">${badge}<h2>${escapeHtml(view.title || view.id)}</h2>` +
    `<p class="iri">${escapeHtml(view.id)}</p><p class="types">${types}</p></header>` +
    abstract +
    tags +
    edgeTable(view.outgoing, "outgoing") +
    edgeTable(view.incoming, "incoming")
  );
}

export function renderStats(payload: StatsResponse): string {
  const window = payload.window
    ? `<p class="window">window ${escapeHtml(payload.window.start)} … ${escapeHtml(payload.window.end)}</p>`
    : "";
  return (
    `<p class="stat"><code>${escapeHtml(payload.metric)}</code> of ` +
    `${escapeHtml(payload.resource)} = <strong>${escapeHtml(String(payload.value))}</strong></p>` +
    window
  );
}
