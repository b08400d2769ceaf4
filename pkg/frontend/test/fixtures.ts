/** Response bodies captured verbatim from a fixture-loaded server. */

import type {
  OrganizeResponse,
  RankedResponse,
  ResourceView,
  StatsResponse,
} from "../src/types.js";

export const newsFixture: RankedResponse = {
  v: 1,
  entries: [
    { resource: { kind: "iri", value: "urn:demo:apepe" }, score: 0.6729500963161781 },
    { resource: { kind: "iri", value: "urn:demo:article1" }, score: 0.6095068271022378 },
  ],
};

export const refereeFixture: RankedResponse = {
  v: 1,
  entries: [
    { resource: { kind: "iri", value: "urn:demo:carol" }, score: 0.875 },
    { resource: { kind: "iri", value: "urn:demo:bob" }, score: 0.4375 },
    { resource: { kind: "iri", value: "urn:demo:dan" }, score: 0.4375 },
  ],
};

export const organizeFixture: OrganizeResponse = {
  v: 1,
  user: "urn:demo:marko",
  folders: {
    "urn:scholar:concept:semantic-web": [
      {
        resource: { kind: "iri", value: "urn:demo:dave" },
        weight: 1.0,
        insertTime: "2008-06-28T00:00:00Z",
      },
      {
        resource: { kind: "iri", value: "urn:demo:josh" },
        weight: 1.0,
        insertTime: "2008-06-26T00:00:00Z",
      },
    ],
  },
};

export const resourceFixture: ResourceView = {
  v: 1,
  id: "urn:demo:article1",
  types: ["core:Article"],
  abbrev: "Ar",
  title: "article1",
  abstract: "",
  outgoing: {
    "core:title": [
      {
        kind: "literal",
        value: "article1",
        datatype: "http://www.w3.org/2001/XMLSchema#string",
      },
    ],
    "rdf:type": [
      { kind: "iri", value: "http://knowledgereefsystems.com/2007/11/core#Article" },
    ],
  },
  incoming: {
    "core:object": [{ kind: "blank", value: "rel7fbe2a8e36913653" }],
  },
  tags: [
    {
      concept: { kind: "iri", value: "urn:scholar:concept:semantic-web" },
      weight: 1.0,
      tagger: { kind: "iri", value: "urn:demo:apepe" },
    },
  ],
};

export const statsFixture: StatsResponse = {
  v: 1,
  resource: "urn:demo:journal",
  metric: "impact_factor",
  value: 0.6666666666666666,
  window: { start: "2006-01-01", end: "2007-12-31" },
};

export const emptyRanked: RankedResponse = { v: 1, entries: [] };
