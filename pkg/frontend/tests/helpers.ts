// A ServiceApi backed by recorded responses from the real service. Any
// request outside the recording is a test failure: the UI must send exactly
// the bytes the service was recorded with.

import { readFileSync } from "node:fs";
import { join } from "node:path";
import { CorpusDetail, ProveResponse, ServiceApi } from "../src/types";

interface Recording {
  prove: Record<string, ProveResponse>;
  corpora: Record<string, CorpusDetail>;
}

// resolved from the package root, which is where vitest runs
const fixturePath = join(process.cwd(), "tests", "fixtures", "recorded.json");

export function loadRecording(): Recording {
  return JSON.parse(readFileSync(fixturePath, "utf-8"));
}

export interface RecordedApi extends ServiceApi {
  calls: { theory: string; statement: string }[];
  /** delay (ms) before each prove resolves; 0 resolves on a microtask */
  latency: number;
}

export function recordedApi(recording = loadRecording()): RecordedApi {
  const api: RecordedApi = {
    calls: [],
    latency: 0,
    async prove(theory: string, statement: string): Promise<ProveResponse> {
      api.calls.push({ theory, statement });
      const key = theory + "\x00" + statement;
      const hit = recording.prove[key];
      if (!hit) {
        throw new Error(
          `no recorded response for this request; statement=${statement} ` +
            `theory=\n${theory}`,
        );
      }
      if (api.latency > 0) {
        await new Promise((resolve) => setTimeout(resolve, api.latency));
      }
      return structuredClone(hit);
    },
    async listCorpora(): Promise<string[]> {
      return Object.keys(recording.corpora);
    },
    async corpus(name: string): Promise<CorpusDetail> {
      const hit = recording.corpora[name];
      if (!hit) throw new Error(`no recorded corpus ${name}`);
      return structuredClone(hit);
    },
  };
  return api;
}
