// Session controller: owns the latest server payload and the little bit of
// view state around it. Mutations post to the API, wait for the rescored
// payload, and only then swap state — optimistic updates are deliberately
// impossible because the payload field is only ever assigned from a server
// response.

import { ApiClient, ApiError } from "./api.js";
import { renderView, type ViewState } from "./render.js";
import type { SuggestionsPayload } from "./types.js";

export class SessionController {
  readonly api: ApiClient;
  readonly sessionId: string;

  payload: SuggestionsPayload | null = null;
  banner: string | null = null;
  topN = 1;
  showRejected = false;
  busy = false;

  constructor(api: ApiClient, sessionId: string) {
    this.api = api;
    this.sessionId = sessionId;
  }

  private state(): ViewState {
    return {
      payload: this.payload,
      banner: this.banner,
      topN: this.topN,
      showRejected: this.showRejected,
      busy: this.busy,
      matrixCsvUrl: this.api.matrixCsvUrl(this.sessionId),
    };
  }

  renderHtml(): string {
    return renderView(this.state());
  }

  isConfirmed(sourceAttr: string, destAttr: string): boolean {
    if (!this.payload) {
      return false;
    }
    return this.payload.confirmed.some(
      (p) => p.source_attr === sourceAttr || p.dest_attr === destAttr,
    );
  }

  private async mutate(
    action: () => Promise<SuggestionsPayload>,
  ): Promise<void> {
    this.banner = null;
    this.busy = true;
    try {
      // the previous payload stays on screen until the server answers
      this.payload = await action();
    } catch (error) {
      if (error instanceof ApiError) {
        this.banner = error.message;
      } else {
        this.banner = "network failure; nothing was changed";
      }
    } finally {
      this.busy = false;
    }
  }

  async load(): Promise<void> {
    await this.mutate(() => this.api.getSuggestions(this.sessionId, this.topN));
  }

  async confirmPair(sourceAttr: string, destAttr: string): Promise<void> {
    if (this.isConfirmed(sourceAttr, destAttr)) {
      this.banner = `a pair using ${sourceAttr} or ${destAttr} is already confirmed`;
      return;
    }
    await this.mutate(async () => {
      await this.api.confirm(this.sessionId, sourceAttr, destAttr);
      return this.api.getSuggestions(this.sessionId, this.topN);
    });
  }

  async rejectPair(sourceAttr: string, destAttr: string): Promise<void> {
    if (this.isConfirmed(sourceAttr, destAttr)) {
      this.banner = "confirmed pairs cannot be rejected";
      return;
    }
    await this.mutate(async () => {
      await this.api.reject(this.sessionId, sourceAttr, destAttr);
      return this.api.getSuggestions(this.sessionId, this.topN);
    });
  }

  async setTopN(topN: number): Promise<void> {
    this.topN = topN;
    await this.load();
  }

  toggleRejected(): void {
    this.showRejected = !this.showRejected;
  }
}
