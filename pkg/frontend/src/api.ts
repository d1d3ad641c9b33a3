// Thin fetch wrapper for the reasoning service.

import { CorpusDetail, ProveResponse, ServiceApi } from "./types.js";

export function httpApi(base = ""): ServiceApi {
  async function expectOk(response: Response): Promise<any> {
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw typeof body === "object" && body !== null && "error" in body
        ? body
        : { error: `${response.status} ${response.statusText}` };
    }
    return body;
  }

  return {
    async prove(theory: string, statement: string): Promise<ProveResponse> {
      const response = await fetch(`${base}/v1/prove`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ theory, statement }),
      });
      return expectOk(response);
    },
    async listCorpora(): Promise<string[]> {
      const response = await fetch(`${base}/v1/corpora`);
      return (await expectOk(response)).corpora;
    },
    async corpus(name: string): Promise<CorpusDetail> {
      const response = await fetch(`${base}/v1/corpora/${name}`);
      return expectOk(response);
    },
  };
}
