/**
 * Client for the engine's HTTP bridge (one protocol document per POST).
 * The UI never computes game logic; everything shown derives from server
 * observations.
 */

export interface ProtocolReply {
  schema_version: number;
  id?: number;
  status: "ok" | "error";
  session?: string;
  payload: Record<string, unknown>;
}

export interface ActionTriple {
  x: number;
  y: number;
  action: number;
}

export class ProtocolClient {
  private nextId = 1;

  constructor(private readonly baseUrl: string) {}

  async request(
    command: string,
    payload: Record<string, unknown> = {},
    session?: string,
  ): Promise<ProtocolReply> {
    const body: Record<string, unknown> = {
      schema_version: 1,
      id: this.nextId++,
      command,
      payload,
    };
    if (session !== undefined) {
      body.session = session;
    }
    const response = await fetch(`${this.baseUrl}/message`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    const reply = (await response.json()) as ProtocolReply;
    if (reply.status !== "ok") {
      const detail = reply.payload as { error?: string; code?: string };
      throw new ProtocolError(detail.error ?? "request failed", detail.code ?? "error");
    }
    return reply;
  }
}

export class ProtocolError extends Error {
  constructor(message: string, readonly code: string) {
    super(message);
  }
}

export class PlaySession {
  private constructor(
    private readonly client: ProtocolClient,
    readonly sessionId: string,
  ) {}

  static async create(
    client: ProtocolClient,
    level: string | object,
    seed: number,
    record?: string,
  ): Promise<PlaySession> {
    const payload: Record<string, unknown> = { level, seed, mode: "human" };
    if (record) {
      payload.record = record;
    }
    const reply = await client.request("create", payload);
    return new PlaySession(client, reply.session as string);
  }

  async observe(): Promise<Record<string, unknown>> {
    const reply = await this.client.request("observe", {}, this.sessionId);
    return reply.payload as Record<string, unknown>;
  }

  async input(action: ActionTriple): Promise<void> {
    await this.client.request("human_input", { action }, this.sessionId);
  }

  async status(): Promise<Record<string, unknown>> {
    const reply = await this.client.request("status", {}, this.sessionId);
    return reply.payload as Record<string, unknown>;
  }

  async close(): Promise<void> {
    await this.client.request("close", {}, this.sessionId);
  }
}
