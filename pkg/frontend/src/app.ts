/** Page-panel webtop over the quadwalk API.
 *
 * Layout: a session bar, then panels for the news feed (concept list on the
 * left, feed on the right), tag organizing, discovery, resource viewing, and
 * stats.  Every number on screen comes straight from an API payload; the
 * client holds no state the server cannot reproduce (reload-safe).
 */

import { ApiClient, ApiError } from "./api.js";
import {
  renderConceptList,
  renderNews,
  renderOrganize,
  renderRanked,
  renderResource,
  renderStats,
} from "./render.js";

interface AppState {
  session: string | null;
  user: string | null;
  activeConcept: string | null;
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showError(err: unknown): void {
  const box = el<HTMLElement>("errors");
  box.textContent = err instanceof ApiError ? err.message : String(err);
  box.hidden = false;
  setTimeout(() => {
    box.hidden = true;
  }, 6000);
}

export function startApp(baseUrl: string): void {
  const client = new ApiClient(baseUrl);
  const state: AppState = { session: null, user: null, activeConcept: null };

  const requireSession = (): string => {
    if (!state.session) throw new ApiError(0, "open a session first");
    return state.session;
  };

  async function refreshConcepts(): Promise<void> {
    const payload = await client.organize(requireSession());
    el("concepts").innerHTML = renderConceptList(payload, state.activeConcept ?? undefined);
    el("organize-body").innerHTML = renderOrganize(payload);
  }

  async function refreshFeed(): Promise<void> {
    if (!state.activeConcept) return;
    const payload = await client.news(state.activeConcept, requireSession());
    el("feed").innerHTML = renderNews(payload);
  }

  async function viewResource(iri: string): Promise<void> {
    const view = await client.viewResource(iri, state.session ?? undefined);
    el("resource-body").innerHTML = renderResource(view);
    el<HTMLInputElement>("resource-iri").value = iri;
  }

  el<HTMLButtonElement>("open-session").addEventListener("click", () => {
    const user = el<HTMLInputElement>("session-user").value.trim();
    client
      .openSession(user)
      .then((sess) => {
        state.session = sess.sessionId;
        state.user = sess.user;
        el("session-label").textContent = `${sess.user} (${sess.sessionId})`;
        return refreshConcepts();
      })
      .catch(showError);
  });

  el<HTMLButtonElement>("refresh-feed").addEventListener("click", () => {
    refreshFeed().catch(showError);
  });

  const weight = el<HTMLInputElement>("tag-weight");
  const weightLabel = el<HTMLElement>("tag-weight-label");
  weight.addEventListener("input", () => {
    weightLabel.textContent = weight.value;
  });

  el<HTMLButtonElement>("tag-submit").addEventListener("click", () => {
    const body = {
      concept: el<HTMLInputElement>("tag-concept").value.trim(),
      resource: el<HTMLInputElement>("tag-resource").value.trim(),
      weight: Number(weight.value),
    };
    client
      .tag(requireSession(), body)
      .then(() => Promise.all([refreshConcepts(), refreshFeed()]))
      .catch(showError);
  });

  el<HTMLButtonElement>("discover-run").addEventListener("click", () => {
    const seeds = el<HTMLInputElement>("discover-seeds")
      .value.split(/\s+/)
      .filter(Boolean);
    const types = el<HTMLInputElement>("discover-types")
      .value.split(/\s+/)
      .filter(Boolean);
    client
      .discover({ seeds, returnTypes: types.length ? types : undefined })
      .then((payload) => {
        el("discover-body").innerHTML = renderRanked(payload, "nothing related found");
      })
      .catch(showError);
  });

  el<HTMLButtonElement>("resource-view").addEventListener("click", () => {
    viewResource(el<HTMLInputElement>("resource-iri").value.trim()).catch(showError);
  });

  el<HTMLButtonElement>("stats-run").addEventListener("click", () => {
    const metric = el<HTMLSelectElement>("stats-metric").value;
    const resource = el<HTMLInputElement>("stats-resource").value.trim();
    const year = el<HTMLInputElement>("stats-year").value;
    const other = el<HTMLInputElement>("stats-other").value.trim();
    client
      .stats(metric, resource, {
        year: year ? Number(year) : undefined,
        other: other || undefined,
      })
      .then((payload) => {
        el("stats-body").innerHTML = renderStats(payload);
      })
      .catch(showError);
  });

  // Delegated navigation: any rendered IRI opens the resource panel (which
  // records usage server-side when a session is open); any concept link
  // switches the feed.
  document.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const iri = target.getAttribute("data-iri");
    if (iri) {
      event.preventDefault();
      viewResource(iri).catch(showError);
      return;
    }
    const concept = target.getAttribute("data-concept");
    if (concept) {
      event.preventDefault();
      state.activeConcept = concept;
      Promise.all([refreshConcepts(), refreshFeed()]).catch(showError);
    }
  });

  client
    .health()
    .then((h) => {
      el("health").textContent = `server ok, ${h.quads} quads`;
    })
    .catch(showError);
}
