/**
 * Human-play client: a real-time HUD over a human-mode engine session.
 * Clicks and buttons become human_input protocol messages; the server's
 * pacer advances the sim at 50 ticks/s and records the trajectory.
 */

import { canvasToWorld } from "./coords.js";
import { PlaySession, ProtocolClient } from "./protocol.js";
import { drawHud, drawObservation, ObservationDoc } from "./render.js";

export type ClickMode =
  | "build_archer"
  | "build_magician"
  | "build_knight"
  | "upgrade"
  | "sell"
  | "assembly"
  | "reinforce"
  | "hero";

const CLICK_ACTION: Record<ClickMode, number> = {
  build_archer: 0,
  build_magician: 1,
  build_knight: 2,
  upgrade: 3,
  sell: 4,
  assembly: 7,
  reinforce: 8,
  hero: 9,
};

const ERROR_TEXT: Record<number, string> = {
  0: "ok",
  1: "there is already a tower there",
  2: "don't have enough gold coins",
  3: "no tower to upgrade there",
  4: "don't have enough gold coins to upgrade",
  5: "no tower to sell there",
  6: "not a valid tower point location",
  7: "outside every Knight Tower's range",
  8: "reinforcements are on cooldown",
  9: "your hero is dead",
  10: "not enough gold for the hero upgrade",
  11: "no tower there to inspect",
};

export class PlayApp {
  session: PlaySession | null = null;
  mode: ClickMode = "build_archer";
  private pollTimer: number | null = null;
  private lastErrorShown = 0;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly toast: HTMLElement,
    private readonly client: ProtocolClient,
  ) {
    canvas.addEventListener("click", (event) => void this.onClick(event));
  }

  async start(level: string, seed: number, record?: string): Promise<void> {
    await this.stop();
    this.session = await PlaySession.create(this.client, level, seed, record);
    this.pollTimer = window.setInterval(() => void this.refresh(), 100);
    this.toast.textContent = `session ${this.session.sessionId} started`;
  }

  async stop(): Promise<void> {
    if (this.pollTimer !== null) {
      window.clearInterval(this.pollTimer);
      this.pollTimer = null;
    }
    if (this.session) {
      try {
        await this.session.close();
      } catch {
        // session may already be gone; fine
      }
      this.session = null;
    }
  }

  setMode(mode: ClickMode): void {
    this.mode = mode;
  }

  async castSkill(): Promise<void> {
    await this.sendAction(0, 0, 10);
  }

  async upgradeHero(): Promise<void> {
    await this.sendAction(0, 0, 11);
  }

  private async onClick(event: MouseEvent): Promise<void> {
    if (!this.session) return;
    const rect = this.canvas.getBoundingClientRect();
    const [x, y] = canvasToWorld(event.clientX - rect.left, event.clientY - rect.top, {
      width: rect.width,
      height: rect.height,
    });
    await this.sendAction(x, y, CLICK_ACTION[this.mode]);
  }

  private async sendAction(x: number, y: number, action: number): Promise<void> {
    if (!this.session) return;
    try {
      await this.session.input({ x, y, action });
    } catch (err) {
      this.toast.textContent = String(err);
    }
  }

  private async refresh(): Promise<void> {
    if (!this.session) return;
    let payload: Record<string, unknown>;
    try {
      payload = await this.session.observe();
    } catch {
      this.toast.textContent = "disconnected — session paused, reconnect to resume";
      return;
    }
    const doc = payload.observation as unknown as ObservationDoc;
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const size = { width: this.canvas.width, height: this.canvas.height };
    drawObservation(ctx, doc, size);
    const hero = doc.Level_Hero_Realtime_Status;
    drawHud(ctx, doc, size, hero ? hero.Hero_Current_Health : null);

    const record = (doc as unknown as Record<string, unknown>)
      .Agent_Last_Action_Info as { Error_Code: number; Is_Success: boolean };
    if (record && !record.Is_Success && record.Error_Code !== this.lastErrorShown) {
      this.lastErrorShown = record.Error_Code;
      this.toast.textContent = `invalid action (code ${record.Error_Code}): ${
        ERROR_TEXT[record.Error_Code] ?? "unknown"
      }`;
    }
    if (payload.done) {
      this.toast.textContent = payload.victory
        ? "victory — all waves repelled"
        : "defeat — base destroyed";
      await this.stop();
    }
  }
}
